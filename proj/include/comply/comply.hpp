#pragma once

#include "conditions.hpp"
#include "dsl.hpp"
#include "errors.hpp"
#include "export.hpp"
#include "greedy_injections.hpp"
#include "greedy_sets.hpp"
#include "heap_games.hpp"
#include "instances.hpp"
#include "multiheap.hpp"
#include "session.hpp"
#include "verify.hpp"

// Greedy sets and injections for a few built-in conditions.
#include <iostream>

#include "comply/dsl.hpp"
#include "comply/greedy_injections.hpp"
#include "comply/greedy_sets.hpp"

using namespace comply;

int main() {
  for (auto c : {ap(3), sidon(2), mean(4), parse_condition("x1 + x3 = 2*x2 OR x1 + x3 = 3*x2")}) {
    std::cout << c.to_string() << ":";
    for (Int x : greedy_avoid_set(c, 60).elements) std::cout << ' ' << x;
    std::cout << '\n';
  }

  std::cout << "\nStanley {0,4}:";
  for (Int x : stanley_sequence({0, 4}, 60).elements) std::cout << ' ' << x;
  std::cout << '\n';

  for (auto mode : {AvoidanceMode::Unrestricted, AvoidanceMode::MaxAc, AvoidanceMode::OrderPreserving}) {
    auto g = greedy_injection(ap(3), mode, 20);
    std::cout << "\npi for ap(3), " << mode_name(mode) << ":";
    for (auto [n, p] : g.pairs()) std::cout << " (" << n << ',' << p << ')';
    std::cout << "\n  involution: " << (is_involution(g).involution ? "yes" : "no") << '\n';
  }
}

#pragma once

#include <json.hpp>
#include <sstream>
#include <string>

#include "greedy_injections.hpp"
#include "greedy_sets.hpp"
#include "heap_games.hpp"
#include "multiheap.hpp"

namespace comply {

inline std::string outcome_csv(const OutcomeTable& t) {
  std::ostringstream os;
  os << "heap,outcome\n";
  for (Int x = 0; x <= t.N; ++x) os << x << ',' << outcome_char(t.at(x)) << '\n';
  return os.str();
}

inline nlohmann::json outcome_json(const OutcomeTable& t) {
  return {{"game", t.game}, {"N", t.N}, {"P", t.p_positions()}};
}

inline std::string nim_csv(const NimValueTable& t) {
  std::ostringstream os;
  os << "heap,g\n";
  for (std::size_t x = 0; x < t.g.size(); ++x) os << x << ',' << t.g[x] << '\n';
  return os.str();
}

inline std::string set_lines(const GreedySet& g) {
  std::ostringstream os;
  for (Int v : g.elements) os << v << '\n';
  return os.str();
}

inline nlohmann::json set_json(const GreedySet& g, bool witnesses = false) {
  nlohmann::json j = {{"condition", g.condition.to_string()},
                      {"seed", g.seed},
                      {"start", g.start},
                      {"N", g.N},
                      {"elements", g.elements}};
  if (witnesses) {
    auto& w = j["witnesses"] = nlohmann::json::object();
    for (auto& [n, t] : g.witnesses) w[std::to_string(n)] = t;
  }
  return j;
}

inline std::string injection_csv(const GreedyInjection& g) {
  std::ostringstream os;
  os << "n,pi\n";
  for (auto [n, v] : g.pairs()) os << n << ',' << v << '\n';
  return os.str();
}

inline nlohmann::json injection_json(const GreedyInjection& g) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [n, v] : g.pairs()) pairs.push_back({n, v});
  return {{"condition", g.name}, {"mode", mode_name(g.mode)}, {"N", g.N()}, {"pairs", pairs}};
}

// Square canvas, one dot per pair, origin bottom-left.
inline std::string injection_svg(const GreedyInjection& g, int cell = 8) {
  Int side = 0;
  for (auto [n, v] : g.pairs()) side = std::max({side, n, v});
  const Int px = (side + 1) * cell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px << "\" height=\"" << px << "\" viewBox=\"0 0 "
     << px << ' ' << px << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (auto [n, v] : g.pairs())
    os << "<circle cx=\"" << n * cell + cell / 2 << "\" cy=\"" << px - (v * cell + cell / 2) << "\" r=\""
       << cell / 3 << "\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

inline std::string grid_csv(const GridOutcomeTable& t) {
  std::ostringstream os;
  os << "x,y,outcome\n";
  for (Int x = 0; x <= t.X; ++x)
    for (Int y = 0; y <= t.Y; ++y) os << x << ',' << y << ',' << outcome_char(t.at(x, y)) << '\n';
  return os.str();
}

inline nlohmann::json grid_json(const GridOutcomeTable& t) {
  nlohmann::json ps = nlohmann::json::array();
  for (auto p : t.p_positions()) ps.push_back({p.x, p.y});
  return {{"condition", t.condition.to_string()}, {"mode", mode_name(t.mode)}, {"X", t.X}, {"Y", t.Y},
          {"approximate", t.approximate}, {"P", ps}};
}

// 8px cells, origin bottom-left, P cells dark.
inline std::string grid_svg(const GridOutcomeTable& t, int cell = 8) {
  const Int w = (t.X + 1) * cell, h = (t.Y + 1) * cell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (auto p : t.p_positions())
    os << "<rect x=\"" << p.x * cell << "\" y=\"" << h - (p.y + 1) * cell << "\" width=\"" << cell << "\" height=\""
       << cell << "\" fill=\"#222\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace comply

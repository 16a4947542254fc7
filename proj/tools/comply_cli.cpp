// Command-line front end: generation, game tables, verification, play, serve.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "comply/comply.hpp"
#include "comply/service.hpp"

using namespace comply;

namespace {

enum Exit { ok = 0, usage = 1, engine = 2, verification = 3 };

std::vector<Int> parse_list(const std::string& s) {
  std::vector<Int> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stoll(tok));
  return out;
}

struct Common {
  std::string cond = "ap(3)";
  std::string mode = "max";
  std::string format;
  std::string out;
  Int n = 13, x = 13, y = 13;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidParams("cannot write " + c.out);
  f << text;
}

std::string join(const std::vector<Int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

GreedyInjection make_perm(const std::string& cond, AvoidanceMode mode, Int n) {
  auto names = named_instances();
  if (std::find(names.begin(), names.end(), cond) != names.end()) return named(cond, mode, n);
  return greedy_injection(parse_condition(cond), mode, n);
}

std::function<bool(Int)> discrepancy_predicate(const std::string& d) {
  if (d == "all") return [](Int) { return true; };
  if (d == "base3") return [](Int v) { return is_base3_01(v); };
  auto v = parse_list(d);
  std::sort(v.begin(), v.end());
  return [v](Int x) { return std::binary_search(v.begin(), v.end(), x); };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comply games and greedy sequences avoiding arithmetic conditions"};
  app.require_subcommand(1);
  Common c;
  std::string seed_list, sets, values, triple, d = "all", checkpoints, kind = "ap3-board", load, role = "proposer",
                                                   session_dir = ".", host = "127.0.0.1", rule = "number", what = "set";
  Int start = -1, terminal = -1, port = 8080, rng_seed = 1, bound = -1;
  std::optional<Int> cap;
  bool witnesses = false;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--cond", c.cond, "condition (DSL or builtin)");
    s->add_option("--mode", c.mode, "un | max | op");
    s->add_option("--n", c.n, "upper bound");
    s->add_option("--x", c.x, "x bound or coordinate");
    s->add_option("--y", c.y, "y bound or coordinate");
    s->add_option("--format", c.format, "csv | json | svg");
    s->add_option("--out", c.out, "output file");
  };

  auto* gen_set = app.add_subcommand("gen-set", "greedy set avoiding a condition");
  add_common(gen_set);
  gen_set->add_option("--seed", seed_list, "initial elements, comma separated");
  gen_set->add_option("--start", start, "first candidate");
  gen_set->add_flag("--witnesses", witnesses, "include exclusion witnesses in JSON");

  auto* gen_perm = app.add_subcommand("gen-perm", "greedy injection (named instance or condition)");
  add_common(gen_perm);
  gen_perm->add_option("--cap", cap, "candidate cap per step");

  auto* out1 = app.add_subcommand("outcomes-1d", "one-heap comply outcome table");
  add_common(out1);
  out1->add_option("--sets", sets, "explicit family, e.g. \"1,2;3\"");
  out1->add_option("--d", d, "discrepancy set: all | base3 | comma list");
  out1->add_option("--terminal", terminal, "heap-dependent sets from --cond with this terminal");
  out1->add_option("--rule", rule, "number | set");

  auto* out2 = app.add_subcommand("outcomes-2d", "two-heap comply outcome grid");
  add_common(out2);

  auto* tri = app.add_subcommand("triple", "three-heap AP game");
  add_common(tri);
  tri->add_option("--triple", triple, "x,y,z")->required();

  auto* st = app.add_subcommand("star", "P-positions of {{d,2d} | d in D}");
  add_common(st);
  st->add_option("--d", d, "all | base3 | comma list");

  auto* real = app.add_subcommand("realizable", "realizability of a P-set or nim-value function");
  add_common(real);
  real->add_option("--set", sets, "candidate P-set, comma separated");
  real->add_option("--values", values, "candidate nim values g(0),g(1),...");

  auto* stan = app.add_subcommand("stanley", "Stanley sequence from an initial set");
  add_common(stan);
  stan->add_option("--seed", seed_list, "initial set")->required();

  auto* dens = app.add_subcommand("density", "counts of a greedy set at checkpoints");
  add_common(dens);
  dens->add_option("--checkpoints", checkpoints, "comma list (default (3^t-1)/2)");

  auto* ver = app.add_subcommand("verify", "compare engines with naive oracles");
  add_common(ver);
  ver->add_option("--seed", rng_seed, "random seed for sampled families");

  auto* exp = app.add_subcommand("export", "write a table: nim | set | perm | grid | outcomes");
  add_common(exp);
  exp->add_option("--what", what, "nim | set | perm | grid | outcomes");
  exp->add_option("--sets", sets, "subtraction set for nim, comma separated");

  auto* play = app.add_subcommand("play", "play against the engine on stdin/stdout");
  add_common(play);
  play->add_option("--kind", kind, "ap3-board | line-nim | wythoff | custom");
  play->add_option("--bound", bound, "board size");
  play->add_option("--role", role, "proposer | chooser");
  play->add_option("--load", load, "resume a saved session");

  auto* serve = app.add_subcommand("serve", "HTTP JSON API");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--session-dir", session_dir);
  serve->add_option("--load", load, "saved session to restore");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (gen_set->parsed()) {
      auto cond = parse_condition(c.cond);
      auto g = greedy_avoid_set(cond, c.n, parse_list(seed_list), start >= 0 ? start : default_start(cond));
      if (c.format == "json")
        emit(c, set_json(g, witnesses).dump(2) + "\n");
      else if (c.format == "lines")
        emit(c, set_lines(g));
      else
        emit(c, join(g.elements) + "\n");
    } else if (gen_perm->parsed()) {
      auto mode = parse_mode(c.mode);
      auto names = named_instances();
      auto g = std::find(names.begin(), names.end(), c.cond) != names.end()
                   ? named(c.cond, mode, c.n)
                   : greedy_injection(parse_condition(c.cond), mode, c.n, cap);
      if (c.format == "csv")
        emit(c, injection_csv(g));
      else if (c.format == "json")
        emit(c, injection_json(g).dump(2) + "\n");
      else if (c.format == "svg")
        emit(c, injection_svg(g));
      else {
        std::string s;
        for (auto [n, v] : g.pairs()) s += "(" + std::to_string(n) + "," + std::to_string(v) + ") ";
        emit(c, s + "\n");
      }
    } else if (out1->parsed()) {
      GameFamily game = terminal >= 0 ? GameFamily::condition_generated(parse_condition(c.cond), terminal)
                        : !sets.empty()
                            ? [&] {
                                std::vector<MoveSet> fam;
                                std::istringstream in(sets);
                                std::string part;
                                while (std::getline(in, part, ';')) fam.push_back(parse_list(part));
                                return GameFamily::explicit_sets(fam);
                              }()
                            : GameFamily::discrepancy_pairs(discrepancy_predicate(d), "{{d,2d} | d in " + d + "}");
      auto t = rule == "set" ? comply_set_outcomes(game, c.n) : comply_number_outcomes(game, c.n);
      if (c.format == "json")
        emit(c, outcome_json(t).dump(2) + "\n");
      else
        emit(c, outcome_csv(t));
    } else if (out2->parsed()) {
      auto t = comply_outcomes_2d(parse_condition(c.cond), parse_mode(c.mode), c.x, c.y);
      if (c.format == "json")
        emit(c, grid_json(t).dump(2) + "\n");
      else if (c.format == "svg")
        emit(c, grid_svg(t));
      else
        emit(c, grid_csv(t));
    } else if (tri->parsed()) {
      auto v = parse_list(triple);
      if (v.size() != 3) throw InvalidParams("--triple needs x,y,z");
      TripleAP t(v[0], v[1], v[2]);
      auto a = three_heap_classify(t), b = three_heap_solve(t);
      emit(c, std::string(1, outcome_char(a)) + "\n");
      if (a != b) {
        std::cerr << "classifier and solver disagree\n";
        return Exit::verification;
      }
    } else if (st->parsed()) {
      emit(c, join(star(discrepancy_predicate(d), c.n)) + "\n");
    } else if (real->parsed()) {
      nlohmann::json j;
      if (!values.empty()) {
        auto r = realizable_as_nim_values(parse_list(values));
        j = {{"realizable", r.realizable}};
        if (r.realizable)
          j["S"] = r.S, j["reproduces"] = r.reproduces;
        else
          j["witness"] = r.witness;
      } else {
        auto r = realizable_as_subtraction_P(parse_list(sets), c.n);
        j = {{"realizable", r.realizable}};
        if (r.realizable)
          j["S"] = r.S, j["reproduces"] = r.reproduces;
        else
          j["witness"] = r.witness;
      }
      emit(c, j.dump() + "\n");
    } else if (stan->parsed()) {
      emit(c, join(stanley_sequence(parse_list(seed_list), c.n).elements) + "\n");
    } else if (dens->parsed()) {
      auto g = greedy_avoid_set(parse_condition(c.cond), c.n);
      std::vector<Int> cps = parse_list(checkpoints);
      if (cps.empty())
        for (Int p = 3; (p - 1) / 2 <= c.n; p *= 3) cps.push_back((p - 1) / 2);
      auto counts = density_profile(g.elements, cps);
      std::string s = "checkpoint,count\n";
      for (std::size_t i = 0; i < cps.size(); ++i) s += std::to_string(cps[i]) + "," + std::to_string(counts[i]) + "\n";
      emit(c, s);
    } else if (ver->parsed()) {
      auto r = verify::run_oracle_harness(static_cast<std::uint64_t>(rng_seed));
      nlohmann::json div = nlohmann::json::array();
      for (auto& dv : r.divergences) div.push_back({{"check", dv.check}, {"counterexample", dv.detail}});
      emit(c, nlohmann::json{{"pass", r.ok()}, {"checks", r.checks.size()}, {"divergences", div}}.dump(2) + "\n");
      return r.ok() ? Exit::ok : Exit::verification;
    } else if (exp->parsed()) {
      if (what == "nim") {
        emit(c, nim_csv(subtraction_nim_values(parse_list(sets.empty() ? "1,2" : sets), c.n)));
      } else if (what == "set") {
        auto cond = parse_condition(c.cond);
        auto g = greedy_avoid_set(cond, c.n);
        emit(c, c.format == "json" ? set_json(g, true).dump(2) + "\n" : set_lines(g));
      } else if (what == "perm") {
        auto g = make_perm(c.cond, parse_mode(c.mode), c.n);
        emit(c, c.format == "svg" ? injection_svg(g) : c.format == "json" ? injection_json(g).dump(2) + "\n" : injection_csv(g));
      } else if (what == "grid") {
        auto t = comply_outcomes_2d(parse_condition(c.cond), parse_mode(c.mode), c.x, c.y);
        emit(c, c.format == "svg" ? grid_svg(t) : c.format == "json" ? grid_json(t).dump(2) + "\n" : grid_csv(t));
      } else if (what == "outcomes") {
        auto t = comply_number_outcomes(all_discrepancy_pairs(), c.n);
        emit(c, c.format == "json" ? outcome_json(t).dump(2) + "\n" : outcome_csv(t));
      } else {
        throw InvalidParams("unknown export '" + what + "'");
      }
    } else if (play->parsed()) {
      BoardCache cache;
      if (!load.empty()) {
        std::ifstream in(load);
        if (!in) throw InvalidParams("cannot read " + load);
        auto s = GameSession::from_json(nlohmann::json::parse(in), cache);
        run_text_session(s, std::cin, std::cout);
        return Exit::ok;
      }
      Board::Spec spec{kind, bound >= 0 ? bound : std::max<Int>(c.x, 20), bound >= 0 ? bound : std::max<Int>(c.y, 20),
                       kind == "custom" ? c.cond : "", parse_mode(c.mode)};
      auto board = cache.get(spec);
      Point startp{c.x, board->one_d() ? 0 : c.y};
      GameSession s("cli", board, startp, role != "chooser");
      run_text_session(s, std::cin, std::cout);
    } else if (serve->parsed()) {
      Service::Options opts;
      opts.session_dir = session_dir;
      Service service(opts);
      if (!load.empty()) std::cout << "restored session " << service.load(load) << "\n";
      httplib::Server srv;
      service.mount(srv);
      std::cout << "listening on " << host << ":" << port << std::endl;
      if (!srv.listen(host, static_cast<int>(port))) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return Exit::engine;
      }
    }
  } catch (const CandidateSearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::engine;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::engine;
  }
  return Exit::ok;
}

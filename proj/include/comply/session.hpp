#pragma once

// Human-vs-engine play under the comply protocol: the player to move proposes a
// set of positions, the opponent picks one, and the picker moves next. A player
// who cannot propose loses.

#include <istream>
#include <json.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsl.hpp"
#include "heap_games.hpp"
#include "multiheap.hpp"

namespace comply {

class SessionError : public Error {
 public:
  SessionError(int status, const std::string& reason) : Error(reason), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

// A playable board: the 1D strip for {{d,2d}} or a 2D grid game.
class Board {
 public:
  struct Spec {
    std::string kind;  // ap3-board | line-nim | wythoff | custom
    Int X = 20, Y = 20;
    std::string condition;  // custom only
    AvoidanceMode mode = AvoidanceMode::MaxAc;
  };

  explicit Board(Spec spec) : spec_(std::move(spec)), cond_(empty_condition()) {
    if (spec_.X < 0 || spec_.Y < 0) throw InvalidParams("bounds must be nonnegative");
    if (spec_.kind == "ap3-board") {
      one_d_ = true;
      spec_.Y = 0;
      table1_ = comply_number_outcomes(all_discrepancy_pairs(), spec_.X);
      return;
    }
    if (spec_.kind == "line-nim") {
      cond_ = line();
      spec_.mode = AvoidanceMode::MaxAc;
    } else if (spec_.kind == "wythoff") {
      cond_ = diagonal();
      spec_.mode = AvoidanceMode::MaxAc;
    } else if (spec_.kind == "custom") {
      cond_ = parse_condition(spec_.condition);
    } else {
      throw InvalidParams("unknown game kind '" + spec_.kind + "'");
    }
    table2_.emplace(comply_outcomes_2d(cond_, spec_.mode, spec_.X, spec_.Y));
  }

  const Spec& spec() const { return spec_; }
  bool one_d() const { return one_d_; }
  bool on_board(Point p) const { return p.x >= 0 && p.y >= 0 && p.x <= spec_.X && p.y <= spec_.Y; }

  Outcome outcome(Point p) const {
    if (!on_board(p)) throw OutOfTable("position off the board");
    return one_d_ ? table1_.at(p.x) : table2_->at(p);
  }

  // Empty string when legal, else the reason.
  std::string check(Point pos, Proposal proposal) const {
    if (one_d_) {
      std::sort(proposal.begin(), proposal.end());
      proposal.erase(std::unique(proposal.begin(), proposal.end()), proposal.end());
      for (auto& p : proposal)
        if (p.x < 0 || p.x > spec_.X || p.y != 0) return "off-board";
      if (proposal.size() != 2) return "condition fails";
      Int d = pos.x - proposal[1].x;
      if (d < 1 || proposal[0].x != pos.x - 2 * d) return "condition fails";
      return {};
    }
    auto v = check_proposal_2d(cond_, spec_.mode, pos, std::move(proposal), spec_.X, spec_.Y);
    return v == ProposalVerdict::ok ? std::string() : verdict_reason(v);
  }

  template <class Fn>
  void for_each_proposal(Point pos, Fn&& fn) const {
    if (one_d_) {
      for (Int d = 1; 2 * d <= pos.x; ++d)
        if (fn(Proposal{{pos.x - 2 * d, 0}, {pos.x - d, 0}})) return;
      return;
    }
    for_each_proposal_2d(cond_, spec_.mode, pos, spec_.Y, std::forward<Fn>(fn));
  }

  bool can_propose(Point pos) const {
    bool any = false;
    for_each_proposal(pos, [&](const Proposal&) { return any = true; });
    return any;
  }

  // Winning proposal (all members P) when one exists, else any legal proposal.
  std::optional<Proposal> engine_proposal(Point pos) const {
    if (one_d_) {
      std::optional<Proposal> first;
      for (Int d = 1; 2 * d <= pos.x; ++d) {
        Proposal p{{pos.x - 2 * d, 0}, {pos.x - d, 0}};
        if (!first) first = p;
        if (outcome(p[0]) == Outcome::P && outcome(p[1]) == Outcome::P) return p;
      }
      return first;
    }
    if (auto best = best_proposal_2d(*table2_, pos)) return best;
    std::optional<Proposal> first;
    for_each_proposal(pos, [&](const Proposal& p) {
      first = p;
      return true;
    });
    return first;
  }

  Point engine_choice(const Proposal& proposal) const {
    for (auto& p : proposal)
      if (outcome(p) == Outcome::N) return p;
    return proposal.front();
  }

  nlohmann::json describe() const {
    nlohmann::json j = {{"kind", spec_.kind}, {"bounds", one_d_ ? nlohmann::json{spec_.X} : nlohmann::json{spec_.X, spec_.Y}}};
    if (!one_d_) {
      j["condition"] = cond_.to_string();
      j["mode"] = mode_name(spec_.mode);
    }
    return j;
  }

 private:
  Spec spec_;
  bool one_d_ = false;
  ConditionExpr cond_;
  OutcomeTable table1_;
  std::optional<GridOutcomeTable> table2_;
};

// Boards are immutable once built; identical specs share one instance.
class BoardCache {
 public:
  std::shared_ptr<const Board> get(const Board::Spec& spec) {
    std::string key = spec.kind + "|" + std::to_string(spec.X) + "|" + std::to_string(spec.Y) + "|" + spec.condition +
                      "|" + mode_name(spec.mode);
    std::lock_guard lock(mutex_);
    auto& slot = boards_[key];
    if (!slot) slot = std::make_shared<const Board>(spec);
    return slot;
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Board>> boards_;
};

enum class Phase { human_propose, human_choose, over };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::human_propose: return "propose";
    case Phase::human_choose: return "choose";
    case Phase::over: return "over";
  }
  return "?";
}

struct MoveRecord {
  std::string proposer;  // human | engine
  Point from;
  Proposal proposal;
  Point chosen;
};

inline nlohmann::json point_json(Point p, bool one_d) {
  return one_d ? nlohmann::json(p.x) : nlohmann::json{p.x, p.y};
}

inline Point point_from_json(const nlohmann::json& j, bool one_d) {
  if (j.is_number_integer()) {
    if (!one_d) throw SessionError(400, "expected [x, y]");
    return {j.get<Int>(), 0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    return {j[0].get<Int>(), j[1].get<Int>()};
  if (j.is_object() && j.contains("x")) return {j.at("x").get<Int>(), j.value("y", Int{0})};
  throw SessionError(400, "malformed position");
}

class GameSession {
 public:
  GameSession(std::string id, std::shared_ptr<const Board> board, Point start, bool human_proposes = true)
      : id_(std::move(id)), board_(std::move(board)), position_(start), human_proposes_first_(human_proposes) {
    if (!board_->on_board(start)) throw SessionError(400, "off-board");
    if (human_proposes)
      begin_human_turn();
    else
      engine_turn();
  }

  const std::string& id() const { return id_; }
  const Board& board() const { return *board_; }
  Phase phase() const { return phase_; }
  Point position() const { return position_; }
  const std::optional<Proposal>& pending() const { return pending_; }
  const std::string& winner() const { return winner_; }
  const std::vector<MoveRecord>& history() const { return history_; }

  // Human proposes at the current position; the engine picks and replies.
  void propose(const Proposal& proposal) {
    if (phase_ != Phase::human_propose) throw SessionError(409, "not in the propose phase");
    auto reason = board_->check(position_, proposal);
    if (!reason.empty()) throw SessionError(400, reason);
    Proposal sorted = proposal;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Point pick = board_->engine_choice(sorted);
    history_.push_back({"human", position_, sorted, pick});
    position_ = pick;
    engine_turn();
  }

  // Human picks a member of the engine's proposal.
  void choose(std::size_t index) {
    if (phase_ != Phase::human_choose) throw SessionError(409, "not in the choose phase");
    if (index >= pending_->size()) throw SessionError(400, "choice index out of range");
    Point pick = (*pending_)[index];
    history_.push_back({"engine", position_, *pending_, pick});
    position_ = pick;
    pending_.reset();
    begin_human_turn();
  }

  nlohmann::json state(std::size_t cap = 200, bool annotate = false) const {
    const bool one_d = board_->one_d();
    nlohmann::json j = {{"id", id_},
                        {"game", board_->describe()},
                        {"position", point_json(position_, one_d)},
                        {"phase", phase_name(phase_)}};
    if (phase_ == Phase::over) j["winner"] = winner_;
    if (pending_) {
      nlohmann::json p = nlohmann::json::array();
      for (auto& q : *pending_) p.push_back(point_json(q, one_d));
      j["engineProposal"] = p;
    }
    nlohmann::json legal = nlohmann::json::array();
    bool truncated = false;
    if (phase_ == Phase::human_propose) {
      board_->for_each_proposal(position_, [&](const Proposal& prop) {
        if (legal.size() >= cap) return truncated = true;
        nlohmann::json p = nlohmann::json::array();
        for (auto& q : prop) p.push_back(point_json(q, one_d));
        legal.push_back(p);
        return false;
      });
    }
    j["legalProposals"] = legal;
    j["truncated"] = truncated;
    if (annotate) j["outcomeAnnotation"] = std::string(1, outcome_char(board_->outcome(position_)));
    nlohmann::json hist = nlohmann::json::array();
    for (auto& m : history_) {
      nlohmann::json p = nlohmann::json::array();
      for (auto& q : m.proposal) p.push_back(point_json(q, one_d));
      hist.push_back({{"proposer", m.proposer},
                      {"from", point_json(m.from, one_d)},
                      {"proposal", p},
                      {"chosen", point_json(m.chosen, one_d)}});
    }
    j["history"] = hist;
    return j;
  }

  // Persistent form: board spec, start, and the human's decisions, replayed on load.
  nlohmann::json to_json() const {
    const auto& s = board_->spec();
    nlohmann::json moves = nlohmann::json::array();
    for (auto& m : history_) {
      if (m.proposer == "human") {
        nlohmann::json p = nlohmann::json::array();
        for (auto& q : m.proposal) p.push_back({q.x, q.y});
        moves.push_back({{"propose", p}});
      } else {
        auto idx = std::find(m.proposal.begin(), m.proposal.end(), m.chosen) - m.proposal.begin();
        moves.push_back({{"choose", idx}});
      }
    }
    Point start = history_.empty() ? position_ : history_.front().from;
    return {{"id", id_},
            {"kind", s.kind},
            {"bounds", {s.X, s.Y}},
            {"condition", s.condition},
            {"mode", mode_name(s.mode)},
            {"start", {start.x, start.y}},
            {"humanProposesFirst", human_proposes_first_},
            {"moves", moves}};
  }

  static GameSession from_json(const nlohmann::json& j, BoardCache& cache) {
    Board::Spec spec{j.at("kind").get<std::string>(), j.at("bounds")[0].get<Int>(), j.at("bounds")[1].get<Int>(),
                     j.value("condition", std::string()), parse_mode(j.value("mode", std::string("max")))};
    Point start{j.at("start")[0].get<Int>(), j.at("start")[1].get<Int>()};
    GameSession s(j.at("id").get<std::string>(), cache.get(spec), start, j.value("humanProposesFirst", true));
    for (auto& m : j.at("moves")) {
      if (m.contains("propose")) {
        Proposal p;
        for (auto& q : m["propose"]) p.push_back({q[0].get<Int>(), q[1].get<Int>()});
        s.propose(p);
      } else {
        s.choose(m.at("choose").get<std::size_t>());
      }
    }
    return s;
  }

 private:
  void begin_human_turn() {
    if (!board_->can_propose(position_)) {
      phase_ = Phase::over;
      winner_ = "engine";
    } else {
      phase_ = Phase::human_propose;
    }
  }

  void engine_turn() {
    auto p = board_->engine_proposal(position_);
    if (!p) {
      phase_ = Phase::over;
      winner_ = "human";
      return;
    }
    pending_ = std::move(p);
    phase_ = Phase::human_choose;
  }

  std::string id_;
  std::shared_ptr<const Board> board_;
  Point position_;
  bool human_proposes_first_;
  Phase phase_ = Phase::human_propose;
  std::optional<Proposal> pending_;
  std::string winner_;
  std::vector<MoveRecord> history_;
};

namespace detail {

inline std::string show_point(Point p, bool one_d) {
  return one_d ? std::to_string(p.x) : "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

inline std::string show_proposal(const Proposal& p, bool one_d) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + show_point(p[i], one_d);
  return s + "}";
}

// "3,6" for heaps, "3,2 5,6" for points.
inline Proposal parse_proposal_text(const std::string& text, bool one_d) {
  std::istringstream in(text);
  std::string tok;
  Proposal out;
  while (in >> tok) {
    std::replace(tok.begin(), tok.end(), ',', ' ');
    std::istringstream t(tok);
    if (one_d) {
      Int v;
      while (t >> v) out.push_back({v, 0});
    } else {
      Int x, y;
      if (!(t >> x >> y)) throw SessionError(400, "expected x,y pairs");
      out.push_back({x, y});
    }
  }
  if (out.empty()) throw SessionError(400, "empty proposal");
  return out;
}

}  // namespace detail

// Text-mode loop: commands "propose ...", "choose i", "show", "quit".
inline void run_text_session(GameSession& s, std::istream& in, std::ostream& out) {
  const bool one_d = s.board().one_d();
  auto report = [&] {
    out << "position " << detail::show_point(s.position(), one_d) << '\n';
    if (s.phase() == Phase::over) {
      out << "game over: " << s.winner() << " wins\n";
    } else if (s.phase() == Phase::human_choose) {
      out << "engine proposes " << detail::show_proposal(*s.pending(), one_d) << "; choose an index\n";
    } else {
      out << "your move: propose a set\n";
    }
  };
  report();
  std::string line;
  while (s.phase() != Phase::over && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd;
    ls >> cmd;
    if (cmd.empty()) continue;
    try {
      if (cmd == "quit") {
        break;
      } else if (cmd == "show") {
        report();
      } else if (cmd == "propose") {
        std::string rest;
        std::getline(ls, rest);
        std::size_t before = s.history().size();
        s.propose(detail::parse_proposal_text(rest, one_d));
        out << "engine takes " << detail::show_point(s.history()[before].chosen, one_d) << '\n';
        report();
      } else if (cmd == "choose") {
        std::size_t i;
        if (!(ls >> i)) throw SessionError(400, "expected an index");
        s.choose(i);
        report();
      } else {
        out << "unknown command; use propose, choose, show, quit\n";
      }
    } catch (const SessionError& e) {
      out << "rejected: " << e.what() << '\n';
    }
  }
}

}  // namespace comply

#pragma once

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "session.hpp"

namespace comply {

// JSON-over-HTTP front end for game sessions. Requests on one session are
// serialized by a per-session mutex; boards are shared and immutable.
class Service {
 public:
  struct Options {
    Int default_bound = 20;
    Int max_bound = 200;
    std::size_t proposal_cap = 200;
    std::filesystem::path session_dir = ".";
  };

  Service() : Service(Options{}) {}
  explicit Service(Options opts) : opts_(std::move(opts)) {}

  // Restores a saved session file; returns its id.
  std::string load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InvalidParams("cannot read " + file.string());
    auto j = nlohmann::json::parse(in);
    auto entry = std::make_shared<Entry>(GameSession::from_json(j, boards_));
    std::lock_guard lock(mutex_);
    auto id = entry->session.id();
    sessions_[id] = entry;
    return id;
  }

  void mount(httplib::Server& srv) {
    srv.Get("/api/games", [this](const httplib::Request&, httplib::Response& res) {
      nlohmann::json games = nlohmann::json::array();
      games.push_back({{"kind", "ap3-board"}, {"dimensions", 1}, {"defaultBounds", {opts_.default_bound}}});
      for (const char* k : {"line-nim", "wythoff", "custom"})
        games.push_back({{"kind", k}, {"dimensions", 2}, {"defaultBounds", {opts_.default_bound, opts_.default_bound}}});
      reply(res, 200, {{"games", games}, {"maxBound", opts_.max_bound}});
    });

    srv.Post("/api/session", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto body = parse_body(req);
        auto spec = spec_from(body);
        auto board = boards_.get(spec);
        Point start = body.contains("start") ? point_from_json(body["start"], board->one_d()) : Point{spec.X, spec.Y};
        bool human_proposes = body.value("role", std::string("proposer")) != "chooser";
        std::string id = "s" + std::to_string(++counter_);
        auto entry = std::make_shared<Entry>(GameSession(id, board, start, human_proposes));
        nlohmann::json state = entry->session.state(opts_.proposal_cap);
        {
          std::lock_guard lock(mutex_);
          sessions_[id] = entry;
        }
        reply(res, 201, {{"id", id}, {"state", state}});
      });
    });

    srv.Get(R"(/api/session/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](GameSession& s) {
        std::size_t cap = req.has_param("cap") ? std::stoul(req.get_param_value("cap")) : opts_.proposal_cap;
        bool annotate = req.has_param("annotate") && req.get_param_value("annotate") != "0";
        reply(res, 200, s.state(cap, annotate));
      });
    });

    srv.Post(R"(/api/session/([^/]+)/propose)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](GameSession& s) {
        auto body = parse_body(req);
        if (!body.contains("proposal") || !body["proposal"].is_array())
          throw SessionError(400, "body needs a proposal array");
        Proposal p;
        for (auto& q : body["proposal"]) p.push_back(point_from_json(q, s.board().one_d()));
        s.propose(p);
        reply(res, 200, s.state(opts_.proposal_cap));
      });
    });

    srv.Post(R"(/api/session/([^/]+)/choose)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](GameSession& s) {
        auto body = parse_body(req);
        if (!body.contains("index") || !body["index"].is_number_unsigned())
          throw SessionError(400, "body needs a nonnegative index");
        s.choose(body["index"].get<std::size_t>());
        reply(res, 200, s.state(opts_.proposal_cap));
      });
    });

    srv.Post(R"(/api/session/([^/]+)/save)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](GameSession& s) {
        auto path = opts_.session_dir / ("session-" + s.id() + ".json");
        std::ofstream out(path);
        if (!out) throw SessionError(500, "cannot write " + path.string());
        out << s.to_json().dump(2) << '\n';
        reply(res, 200, {{"path", path.string()}});
      });
    });

    srv.Get("/api/eval", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        nlohmann::json body = {{"kind", req.get_param_value("kind")}};
        if (req.has_param("cond")) body["condition"] = req.get_param_value("cond");
        if (req.has_param("mode")) body["mode"] = req.get_param_value("mode");
        Point p{param_int(req, "x"), req.has_param("y") ? param_int(req, "y") : 0};
        Int bound = std::max({opts_.default_bound, p.x, p.y});
        body["bounds"] = {bound, bound};
        auto board = boards_.get(spec_from(body));
        if (!board->on_board(p)) throw SessionError(400, "off-board");
        reply(res, 200, {{"outcome", std::string(1, outcome_char(board->outcome(p)))}});
      });
    });
  }

 private:
  struct Entry {
    explicit Entry(GameSession s) : session(std::move(s)) {}
    std::mutex mutex;
    GameSession session;
  };

  static void reply(httplib::Response& res, int status, const nlohmann::json& j) {
    res.status = status;
    res.set_content(j.dump(), "application/json");
  }

  template <class Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const SessionError& e) {
      reply(res, e.status(), {{"error", e.what()}, {"reason", e.what()}});
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, {{"error", "malformed JSON"}, {"reason", e.what()}});
    } catch (const Error& e) {
      reply(res, 400, {{"error", e.what()}, {"reason", e.what()}});
    } catch (const std::invalid_argument& e) {
      reply(res, 400, {{"error", "bad parameter"}, {"reason", e.what()}});
    }
  }

  static nlohmann::json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return nlohmann::json::object();
    auto j = nlohmann::json::parse(req.body);
    if (!j.is_object()) throw SessionError(400, "body must be a JSON object");
    return j;
  }

  static Int param_int(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) throw SessionError(400, std::string("missing parameter ") + name);
    return std::stoll(req.get_param_value(name));
  }

  Board::Spec spec_from(const nlohmann::json& body) const {
    Board::Spec spec;
    spec.kind = body.value("kind", std::string());
    spec.X = spec.Y = opts_.default_bound;
    if (body.contains("bounds")) {
      auto& b = body["bounds"];
      if (b.is_number_integer()) {
        spec.X = spec.Y = b.get<Int>();
      } else if (b.is_array() && !b.empty()) {
        spec.X = b[0].get<Int>();
        spec.Y = b.size() > 1 ? b[1].get<Int>() : spec.X;
      }
    }
    if (spec.X < 0 || spec.Y < 0 || spec.X > opts_.max_bound || spec.Y > opts_.max_bound)
      throw SessionError(400, "bounds outside [0," + std::to_string(opts_.max_bound) + "]");
    spec.condition = body.value("condition", std::string());
    if (body.contains("mode")) spec.mode = parse_mode(body["mode"].get<std::string>());
    if (spec.kind == "ap3-board") spec.Y = 0;
    if (spec.kind != "custom") spec.condition.clear();
    return spec;
  }

  template <class Fn>
  void with_session(const httplib::Request& req, httplib::Response& res, Fn&& fn) {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard lock(mutex_);
      auto it = sessions_.find(req.matches[1]);
      if (it != sessions_.end()) entry = it->second;
    }
    if (!entry) {
      reply(res, 404, {{"error", "unknown session"}});
      return;
    }
    std::lock_guard lock(entry->mutex);
    guarded(res, [&] { fn(entry->session); });
  }

  Options opts_;
  BoardCache boards_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<long> counter_{0};
};

}  // namespace comply

#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "comply/heap_games.hpp"
#include "comply/multiheap.hpp"
#include "comply/service.hpp"

using namespace comply;
using nlohmann::json;

namespace {

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("comply-svc-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    Service::Options o;
    o.session_dir = dir_;
    o.max_bound = 60;
    svc_ = std::make_unique<Service>(o);
    svc_->mount(srv_);
    port_ = srv_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
  }

  void TearDown() override {
    srv_.stop();
    thread_.join();
    std::filesystem::remove_all(dir_);
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

  std::pair<int, json> post(const std::string& path, const std::string& body) const {
    auto r = client().Post(path, body, "application/json");
    if (!r) return {0, {}};
    return {r->status, json::parse(r->body)};
  }
  std::pair<int, json> post(const std::string& path, const json& body) const { return post(path, body.dump()); }

  std::pair<int, json> get(const std::string& path) const {
    auto r = client().Get(path);
    if (!r) return {0, {}};
    return {r->status, json::parse(r->body)};
  }

  std::string create(const json& body) {
    auto [status, j] = post("/api/session", body);
    EXPECT_EQ(status, 201) << j.dump();
    return j.value("id", "");
  }

  std::filesystem::path dir_;
  std::unique_ptr<Service> svc_;
  httplib::Server srv_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_F(ServiceTest, ListsGames) {
  auto [status, j] = get("/api/games");
  ASSERT_EQ(status, 200);
  std::vector<std::string> kinds;
  for (auto& g : j["games"]) kinds.push_back(g["kind"]);
  EXPECT_EQ(kinds, (std::vector<std::string>{"ap3-board", "line-nim", "wythoff", "custom"}));
  EXPECT_EQ(j["maxBound"], 60);
}

TEST_F(ServiceTest, HeapTwoGame) {
  auto id = create({{"kind", "ap3-board"}, {"bounds", 10}, {"start", 2}});
  auto [s0, st] = get("/api/session/" + id);
  ASSERT_EQ(s0, 200);
  EXPECT_EQ(st["phase"], "propose");
  EXPECT_EQ(st["legalProposals"], json::parse("[[0,1]]"));
  auto [s1, j] = post("/api/session/" + id + "/propose", json{{"proposal", {0, 1}}});
  ASSERT_EQ(s1, 200) << j.dump();
  EXPECT_EQ(j["phase"], "over");
  EXPECT_EQ(j["winner"], "human");
}

TEST_F(ServiceTest, ChooserRoleAndPhaseConflict) {
  auto id = create({{"kind", "wythoff"}, {"bounds", {12, 12}}, {"start", {3, 3}}, {"role", "chooser"}});
  auto [s0, st] = get("/api/session/" + id);
  EXPECT_EQ(st["phase"], "choose");
  auto [s1, j1] = post("/api/session/" + id + "/propose", json{{"proposal", {{0, 0}}}});
  EXPECT_EQ(s1, 409);
  auto [s2, j2] = post("/api/session/" + id + "/choose", json{{"index", 0}});
  EXPECT_EQ(s2, 200) << j2.dump();
}

TEST_F(ServiceTest, Errors) {
  EXPECT_EQ(post("/api/session", json{{"kind", "line-nim"}, {"bounds", {500, 5}}}).first, 400);
  EXPECT_EQ(post("/api/session", json{{"kind", "chess"}}).first, 400);
  EXPECT_EQ(post("/api/session", std::string("{kind:")).first, 400);
  EXPECT_EQ(post("/api/session", json{{"kind", "custom"}, {"condition", "ap(3"}}).first, 400);
  EXPECT_EQ(get("/api/session/nosuch").first, 404);
  EXPECT_EQ(post("/api/session/nosuch/choose", json{{"index", 0}}).first, 404);

  auto id = create({{"kind", "line-nim"}, {"bounds", {20, 20}}, {"start", {6, 8}}});
  auto [s1, j1] = post("/api/session/" + id + "/propose", json{{"proposal", {{4, 3}, {5, 6}}}});
  EXPECT_EQ(s1, 400);
  EXPECT_EQ(j1["reason"], "condition fails");
  auto [s2, j2] = post("/api/session/" + id + "/propose", json{{"proposal", {{3, 2}, {7, 10}}}});
  EXPECT_EQ(s2, 400);
  EXPECT_EQ(j2["reason"], "mode violation");
  EXPECT_EQ(post("/api/session/" + id + "/propose", std::string("[1,2")).first, 400);
  EXPECT_EQ(post("/api/session/" + id + "/propose", json{{"proposal", 3}}).first, 400);
  EXPECT_EQ(post("/api/session/" + id + "/choose", json{{"index", 0}}).first, 409);
}

TEST_F(ServiceTest, EvalAgreesWithTables) {
  auto t1 = comply_number_outcomes(all_discrepancy_pairs(), 20);
  for (Int x = 0; x <= 20; ++x) {
    auto [status, j] = get("/api/eval?kind=ap3-board&x=" + std::to_string(x));
    ASSERT_EQ(status, 200);
    EXPECT_EQ(j["outcome"], std::string(1, outcome_char(t1.at(x)))) << x;
  }
  auto t2 = comply_outcomes_2d(line(), AvoidanceMode::MaxAc, 20, 20);
  for (Int x = 0; x <= 20; x += 3)
    for (Int y = 0; y <= 20; y += 2) {
      auto [status, j] = get("/api/eval?kind=line-nim&x=" + std::to_string(x) + "&y=" + std::to_string(y));
      ASSERT_EQ(status, 200);
      EXPECT_EQ(j["outcome"], std::string(1, outcome_char(t2.at(x, y))));
    }
  auto [s, j] = get("/api/eval?kind=custom&cond=x1%2Bx2%3D2*x3&mode=op&x=4&y=4");
  EXPECT_EQ(s, 200) << j.dump();
  EXPECT_EQ(get("/api/eval?kind=line-nim&x=-1&y=0").first, 400);
  EXPECT_EQ(get("/api/eval?kind=line-nim").first, 400);
}

TEST_F(ServiceTest, SaveAndLoad) {
  auto id = create({{"kind", "line-nim"}, {"bounds", {10, 10}}, {"start", {6, 8}}});
  post("/api/session/" + id + "/propose", json{{"proposal", {{3, 2}, {5, 6}}}});
  auto [s1, before] = get("/api/session/" + id);
  auto [s2, saved] = post("/api/session/" + id + "/save", json::object());
  ASSERT_EQ(s2, 200);
  std::filesystem::path file = saved["path"].get<std::string>();
  EXPECT_TRUE(std::filesystem::exists(file));
  EXPECT_EQ(file.parent_path(), dir_);

  Service other;
  EXPECT_EQ(other.load(file), id);
  httplib::Server srv;
  other.mount(srv);
  int port = srv.bind_to_any_port("127.0.0.1");
  std::thread t([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  auto r = httplib::Client("127.0.0.1", port).Get("/api/session/" + id);
  srv.stop();
  t.join();
  ASSERT_TRUE(r);
  EXPECT_EQ(json::parse(r->body), before);
}

TEST_F(ServiceTest, ConcurrentSessions) {
  constexpr int kThreads = 8;
  std::vector<std::thread> ts;
  std::vector<int> wins(kThreads, 0);
  for (int i = 0; i < kThreads; ++i)
    ts.emplace_back([&, i] {
      for (int round = 0; round < 5; ++round) {
        auto [status, j] = post("/api/session", json{{"kind", "ap3-board"}, {"bounds", 30}, {"start", 2}});
        if (status != 201) continue;
        std::string id = j["id"];
        auto [s, k] = post("/api/session/" + id + "/propose", json{{"proposal", {0, 1}}});
        if (s == 200 && k["winner"] == "human") ++wins[i];
      }
    });
  // Hammer one shared session too; exactly one propose can succeed.
  auto shared = create({{"kind", "ap3-board"}, {"bounds", 10}, {"start", 2}});
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> us;
  for (int i = 0; i < 4; ++i)
    us.emplace_back([&] {
      auto s = post("/api/session/" + shared + "/propose", json{{"proposal", {0, 1}}}).first;
      (s == 200 ? ok : conflict)++;
    });
  for (auto& t : ts) t.join();
  for (auto& t : us) t.join();
  for (int w : wins) EXPECT_EQ(w, 5);
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 3);
}

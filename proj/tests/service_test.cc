#include "polarlex/service.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <unistd.h>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "polarlex/error.h"

namespace polarlex {
namespace {

namespace fs = std::filesystem;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("polarlex_service_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name) << content;
  }

  void make_dataset(const std::vector<std::string>& lemmas,
                    const std::vector<std::string>& domains) {
    std::string l, d;
    for (const auto& x : lemmas) l += x + '\n';
    for (const auto& x : domains) d += x + '\n';
    write("lemmas.txt", l);
    write("domains.txt", d);
  }

  // Submits every remaining item of a session with `tag`; returns the order.
  std::vector<std::pair<std::string, std::string>> drain(AnnotationService& svc,
                                                         const std::string& session, int tag) {
    std::vector<std::pair<std::string, std::string>> order;
    while (auto item = svc.next_item(session)) {
      order.emplace_back(item->lemma, item->domain);
      svc.submit(session, item->lemma, item->domain, PolarityTag::from_int(tag), false);
    }
    return order;
  }

  fs::path dir_;
};

TEST_F(ServiceTest, FreshSessionCoversEveryPair) {
  make_dataset({"alto", "bajo"}, {"cars", "films"});
  AnnotationService svc(dir_);
  const auto s = svc.create_session("ana");
  const auto first = svc.next_item(s);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->position, 1u);
  EXPECT_EQ(first->total, 4u);
  // Reading does not advance.
  EXPECT_EQ(svc.next_item(s)->lemma, first->lemma);
  EXPECT_EQ(svc.next_item(s)->domain, first->domain);

  const auto order = drain(svc, s, 1);
  EXPECT_EQ(order.size(), 4u);
  EXPECT_EQ(std::set(order.begin(), order.end()).size(), 4u);
  EXPECT_FALSE(svc.next_item(s));
}

TEST_F(ServiceTest, FirstItemIsDeterministicForAnnotator) {
  make_dataset({"alto", "bajo", "caro", "duro"}, {"cars", "phones", "films"});
  std::optional<WorkItem> first;
  for (int run = 0; run < 3; ++run) {
    AnnotationService svc(dir_);
    const auto item = svc.next_item(svc.create_session("ana"));
    ASSERT_TRUE(item);
    if (first) {
      EXPECT_EQ(item->lemma, first->lemma);
      EXPECT_EQ(item->domain, first->domain);
    }
    first = item;
  }
}

TEST_F(ServiceTest, QueueInterleavesDomainsRoundRobin) {
  make_dataset({"a", "b", "c", "d", "e"}, {"cars", "phones", "films"});
  AnnotationService svc(dir_);
  const auto order = drain(svc, svc.create_session("ana"), 0);
  ASSERT_EQ(order.size(), 15u);
  const std::vector<std::string> domains = {"cars", "phones", "films"};
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i].second, domains[i % 3]);
}

TEST(AnnotationQueue, PermutationAndSeedSensitivity) {
  const auto q = annotation_queue(20, 3, 42);
  EXPECT_EQ(q.size(), 60u);
  EXPECT_EQ(std::set(q.begin(), q.end()).size(), 60u);
  EXPECT_EQ(annotation_queue(20, 3, 42), q);
  EXPECT_NE(annotation_queue(20, 3, 43), q);
  EXPECT_TRUE(annotation_queue(0, 3, 1).empty());
}

TEST(StableHash, KnownValues) {
  // FNV-1a 64 reference values.
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
}

TEST_F(ServiceTest, TwoSessionsSameAnnotatorShareRemainingOrder) {
  make_dataset({"a", "b", "c", "d"}, {"cars", "films"});
  AnnotationService svc(dir_);
  const auto s1 = svc.create_session("ana");
  const auto s2 = svc.create_session("ana");
  while (auto item = svc.next_item(s1)) {
    const auto other = svc.next_item(s2);
    ASSERT_TRUE(other);
    EXPECT_EQ(other->lemma, item->lemma);
    EXPECT_EQ(other->domain, item->domain);
    svc.submit(s1, item->lemma, item->domain, PolarityTag::positive(), false);
  }
  EXPECT_FALSE(svc.next_item(s2));
}

TEST_F(ServiceTest, ResumedSessionStartsAtFirstUntaggedItem) {
  make_dataset({"a", "b", "c"}, {"cars", "films"});
  std::vector<std::pair<std::string, std::string>> full;
  {
    AnnotationService svc(dir_);
    const auto s = svc.create_session("ana");
    for (int i = 0; i < 2; ++i) {
      const auto item = svc.next_item(s);
      full.emplace_back(item->lemma, item->domain);
      svc.submit(s, item->lemma, item->domain, PolarityTag::neutral(), false);
    }
  }
  AnnotationService restarted(dir_);
  const auto s = restarted.create_session("ana");
  const auto rest = drain(restarted, s, 0);
  EXPECT_EQ(rest.size(), 4u);
  for (const auto& done : full) EXPECT_EQ(std::count(rest.begin(), rest.end(), done), 0);
}

TEST_F(ServiceTest, NeverServesTaggedCell) {
  make_dataset({"a", "b"}, {"cars", "films"});
  AnnotationService svc(dir_);
  const auto s1 = svc.create_session("ana");
  const auto s2 = svc.create_session("ana");
  const auto first = *svc.next_item(s1);
  svc.submit(s2, first.lemma, first.domain, PolarityTag::positive(), false);
  const auto next = svc.next_item(s1);
  ASSERT_TRUE(next);
  EXPECT_FALSE(next->lemma == first.lemma && next->domain == first.domain);
}

TEST_F(ServiceTest, ConflictAndAmend) {
  make_dataset({"a"}, {"cars"});
  AnnotationService svc(dir_);
  const auto s = svc.create_session("ana");
  EXPECT_EQ(svc.submit(s, "a", "cars", PolarityTag::positive(), false), WriteKind::kSet);
  EXPECT_THROW(svc.submit(s, "a", "cars", PolarityTag::negative(), false), ConflictError);
  EXPECT_EQ(svc.submit(s, "a", "cars", PolarityTag::negative(), true), WriteKind::kAmend);
  EXPECT_EQ(svc.snapshot()->tag("a", "cars", "ana"), PolarityTag::negative());
}

TEST_F(ServiceTest, RejectsUnknownSessionAndNames) {
  make_dataset({"a"}, {"cars"});
  AnnotationService svc(dir_);
  EXPECT_THROW(svc.next_item("nope"), NotFoundError);
  EXPECT_THROW(svc.submit("nope", "a", "cars", PolarityTag::positive(), false), NotFoundError);
  const auto s = svc.create_session("ana");
  EXPECT_THROW(svc.submit(s, "zzz", "cars", PolarityTag::positive(), false), ValidationError);
  EXPECT_THROW(svc.submit(s, "a", "films", PolarityTag::positive(), false), ValidationError);
  EXPECT_THROW(svc.create_session(""), ValidationError);
  EXPECT_THROW(svc.create_session("a\tb"), ValidationError);
}

TEST_F(ServiceTest, RestartReplaysLogIncludingAmend) {
  make_dataset({"a", "b"}, {"cars", "films"});
  AnnotationMatrix before;
  {
    AnnotationService svc(dir_);
    const auto s1 = svc.create_session("ana");
    const auto s2 = svc.create_session("ben");
    svc.submit(s1, "a", "cars", PolarityTag::positive(), false);
    svc.submit(s2, "a", "cars", PolarityTag::negative(), false);
    svc.submit(s1, "b", "films", PolarityTag::neutral(), false);
    svc.submit(s1, "a", "cars", PolarityTag::neutral(), true);
    before = *svc.snapshot();
  }
  AnnotationService restarted(dir_);
  EXPECT_EQ(*restarted.snapshot(), before);
  EXPECT_EQ(restarted.snapshot()->tag("a", "cars", "ana"), PolarityTag::neutral());
  std::ifstream log(dir_ / "annotations.log");
  std::string content((std::istreambuf_iterator<char>(log)), std::istreambuf_iterator<char>());
  EXPECT_EQ(content,
            "a\tcars\tana\t1\tset\n"
            "a\tcars\tben\t-1\tset\n"
            "b\tfilms\tana\t0\tset\n"
            "a\tcars\tana\t0\tamend\n");
}

TEST_F(ServiceTest, RecoversFromTornTail) {
  make_dataset({"a", "b"}, {"cars"});
  write("annotations.log", "a\tcars\tana\t1\tset\nb\tcars\tan");
  {
    AnnotationService svc(dir_);
    EXPECT_TRUE(svc.recovered_torn_tail());
    EXPECT_EQ(svc.snapshot()->cell_count(), 1u);
    svc.submit(svc.create_session("ana"), "b", "cars", PolarityTag::negative(), false);
  }
  AnnotationService again(dir_);
  EXPECT_FALSE(again.recovered_torn_tail());
  EXPECT_EQ(again.snapshot()->tag("b", "cars", "ana"), PolarityTag::negative());
}

TEST_F(ServiceTest, StartupFailures) {
  EXPECT_THROW(AnnotationService(dir_ / "missing"), std::runtime_error);
  EXPECT_THROW(AnnotationService{dir_}, std::runtime_error);  // no rosters
  make_dataset({"a"}, {"cars"});
  write("annotations.log", "a\tcars\tana\t1\tbogus\n");
  EXPECT_THROW(AnnotationService{dir_}, std::runtime_error);
  fs::remove(dir_ / "annotations.log");
  fs::create_directory(dir_ / "annotations.log");
  EXPECT_THROW(AnnotationService{dir_}, std::system_error);
}

TEST_F(ServiceTest, Progress) {
  make_dataset({"a", "b", "c"}, {"cars", "films"});
  AnnotationService svc(dir_);
  EXPECT_TRUE(svc.progress().entries.empty());
  EXPECT_EQ(svc.progress().overall, 0.0);
  const auto s = svc.create_session("ana");
  svc.create_session("ben");
  svc.submit(s, "a", "cars", PolarityTag::positive(), false);
  svc.submit(s, "b", "cars", PolarityTag::positive(), false);
  svc.submit(s, "a", "films", PolarityTag::positive(), false);
  const auto view = svc.progress();
  ASSERT_EQ(view.entries.size(), 4u);
  EXPECT_EQ(view.entries[0].annotator, "ana");
  EXPECT_EQ(view.entries[0].domain, "cars");
  EXPECT_EQ(view.entries[0].tagged, 2u);
  EXPECT_EQ(view.entries[0].total, 3u);
  EXPECT_EQ(view.entries[1].tagged, 1u);
  EXPECT_EQ(view.entries[2].annotator, "ben");
  EXPECT_EQ(view.entries[2].tagged, 0u);
  for (const auto& e : view.entries) EXPECT_LE(e.tagged, e.total);
  EXPECT_DOUBLE_EQ(view.overall, 3.0 / 12.0);
}

TEST_F(ServiceTest, LiveAgreement) {
  make_dataset({"x", "y"}, {"cars", "films"});
  AnnotationService svc(dir_);
  for (const auto& a : svc.agreement()) EXPECT_FALSE(a.result);

  std::vector<std::string> sessions;
  for (const auto& r : testing::kAnnotators) sessions.push_back(svc.create_session(r));
  const auto x = testing::tags_of({1, 1, 1, 1, 0});
  const auto y = testing::tags_of({-1, -1, -1, -1, -1});
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    svc.submit(sessions[i], "x", "cars", x[i], false);
    svc.submit(sessions[i], "y", "films", PolarityTag::positive(), false);
  }
  auto agreement = svc.agreement();
  ASSERT_EQ(agreement.size(), 2u);
  ASSERT_TRUE(agreement[0].result);
  EXPECT_EQ(agreement[0].result->item_count, 1);
  ASSERT_TRUE(agreement[1].result);
  EXPECT_EQ(agreement[1].result->kappa, 1.0);

  for (std::size_t i = 0; i < sessions.size(); ++i) svc.submit(sessions[i], "y", "cars", y[i], false);
  agreement = svc.agreement();
  EXPECT_EQ(agreement[0].result->item_count, 2);
  EXPECT_NEAR(agreement[0].result->kappa, 0.38 / 0.58, 1e-9);
}

TEST_F(ServiceTest, ConcurrentSubmissionsAreAllDurable) {
  std::vector<std::string> lemmas;
  for (int i = 0; i < 20; ++i) lemmas.push_back("l" + std::to_string(i));
  make_dataset(lemmas, {"cars", "phones", "films"});
  AnnotationMatrix before;
  {
    AnnotationService svc(dir_);
    std::vector<std::thread> workers;
    for (int a = 0; a < 4; ++a)
      workers.emplace_back([&, a] {
        const auto s = svc.create_session("r" + std::to_string(a));
        while (auto item = svc.next_item(s)) {
          svc.submit(s, item->lemma, item->domain, PolarityTag::from_int(a % 3 - 1), false);
          svc.agreement();
        }
      });
    for (auto& w : workers) w.join();
    before = *svc.snapshot();
  }
  EXPECT_EQ(before.cell_count(), 20u * 3u * 4u);
  EXPECT_TRUE(before.complete());
  AnnotationService restarted(dir_);
  EXPECT_EQ(*restarted.snapshot(), before);
}

TEST_F(ServiceTest, InstructionsOverride) {
  make_dataset({"a"}, {"cars"});
  {
    AnnotationService svc(dir_);
    EXPECT_EQ(svc.instructions(), kDefaultInstructions);
  }
  write("instructions.txt", "Tag it.");
  AnnotationService svc(dir_);
  EXPECT_EQ(svc.instructions(), "Tag it.");
}

}  // namespace
}  // namespace polarlex

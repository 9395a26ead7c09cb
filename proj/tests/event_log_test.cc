#include "polarlex/event_log.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "polarlex/error.h"

namespace polarlex {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("polarlex_event_log_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto path = dir / name;
  fs::remove(path);
  return path;
}

LogEvent event(std::string lemma, int tag, WriteKind kind) {
  return {{std::move(lemma), "cars", "a1", PolarityTag::from_int(tag), std::nullopt}, kind};
}

TEST(EventLog, FormatsExportRowPlusAction) {
  EXPECT_EQ(format_event(event("antiguo", -1, WriteKind::kSet)), "antiguo\tcars\ta1\t-1\tset");
  EXPECT_EQ(format_event(event("antiguo", 0, WriteKind::kAmend)), "antiguo\tcars\ta1\t0\tamend");
}

TEST(EventLog, AppendThenReplayReproducesMatrix) {
  const auto path = temp_path("replay.log");
  AnnotationMatrix live;
  {
    EventLog log(path);
    for (const auto& e : {event("antiguo", -1, WriteKind::kSet), event("bello", 1, WriteKind::kSet),
                          event("antiguo", 0, WriteKind::kAmend)}) {
      live.add_record(e.record, e.kind == WriteKind::kAmend);
      log.append(e);
    }
  }
  std::ifstream in(path);
  const auto replay = read_events(in);
  EXPECT_FALSE(replay.dropped_torn_tail);
  ASSERT_EQ(replay.events.size(), 3u);
  AnnotationMatrix rebuilt;
  apply_events(rebuilt, replay.events);
  EXPECT_EQ(rebuilt, live);
  EXPECT_EQ(rebuilt.tag("antiguo", "cars", "a1"), PolarityTag::neutral());
}

TEST(EventLog, ReopenAppends) {
  const auto path = temp_path("reopen.log");
  { EventLog(path).append(event("a", 1, WriteKind::kSet)); }
  { EventLog(path).append(event("b", 1, WriteKind::kSet)); }
  std::ifstream in(path);
  EXPECT_EQ(read_events(in).events.size(), 2u);
}

TEST(EventLog, TornTailIsDroppedAndRepaired) {
  const auto path = temp_path("torn.log");
  {
    std::ofstream out(path);
    out << "a\tcars\ta1\t1\tset\nb\tcars\ta1\t";
  }
  {
    std::ifstream in(path);
    const auto replay = read_events(in);
    EXPECT_TRUE(replay.dropped_torn_tail);
    EXPECT_EQ(replay.events.size(), 1u);
  }
  EXPECT_EQ(repair_torn_tail(path), std::string("b\tcars\ta1\t").size());
  EventLog(path).append(event("c", 0, WriteKind::kSet));
  std::ifstream in(path);
  const auto replay = read_events(in);
  EXPECT_FALSE(replay.dropped_torn_tail);
  ASSERT_EQ(replay.events.size(), 2u);
  EXPECT_EQ(replay.events[1].record.lemma, "c");
}

TEST(EventLog, MalformedLines) {
  std::istringstream bad_action("a\tcars\ta1\t1\tdelete\n");
  EXPECT_THROW(read_events(bad_action), FormatError);
  std::istringstream bad_tag("a\tcars\ta1\t5\tset\n");
  EXPECT_THROW(read_events(bad_tag), FormatError);
  std::istringstream short_row("a\tcars\ta1\t1\n");
  EXPECT_THROW(read_events(short_row), FormatError);
}

TEST(EventLog, ReplayRejectsInconsistentHistory) {
  AnnotationMatrix m;
  EXPECT_THROW(apply_events(m, {event("a", 1, WriteKind::kAmend)}), FormatError);
  AnnotationMatrix m2;
  EXPECT_THROW(apply_events(m2, {event("a", 1, WriteKind::kSet), event("a", 0, WriteKind::kSet)}),
               FormatError);
}

TEST(EventLog, UnwritableLocationThrows) {
  EXPECT_THROW(EventLog("/nonexistent-dir/for/polarlex/annotations.log"), std::system_error);
}

}  // namespace
}  // namespace polarlex

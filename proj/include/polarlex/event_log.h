#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "polarlex/annotation.h"

namespace polarlex {

struct LogEvent {
  AnnotationRecord record;
  WriteKind kind = WriteKind::kSet;

  bool operator==(const LogEvent&) const = default;
};

// "lemma\tdomain\tannotator\ttag\tset|amend"
std::string format_event(const LogEvent& event);

struct ReplayResult {
  std::vector<LogEvent> events;
  // Set when the final line had no terminating newline and was dropped (a
  // write interrupted before it was acknowledged).
  bool dropped_torn_tail = false;
};

// Parses an event log. Throws FormatError for a malformed complete line.
ReplayResult read_events(std::istream& in);

// Applies events in order: "set" rows require an empty cell, "amend" rows an
// occupied one.
void apply_events(AnnotationMatrix& matrix, const std::vector<LogEvent>& events);

// Truncates an unterminated final line so later appends start on a fresh
// line. Returns the number of bytes removed.
std::uintmax_t repair_torn_tail(const std::filesystem::path& path);

// Append-only, fsync'ed event log file. Not thread-safe; callers serialize
// appends.
class EventLog {
 public:
  // Opens (creating if needed) the log at `path`. Throws std::system_error.
  explicit EventLog(std::filesystem::path path);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  // Returns once the line is on stable storage. Throws std::system_error.
  void append(const LogEvent& event);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace polarlex

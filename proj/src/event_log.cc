#include "polarlex/event_log.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <fstream>
#include <iterator>
#include <system_error>

#include "polarlex/error.h"

namespace polarlex {

std::string format_event(const LogEvent& event) {
  return format_row(event.record) + (event.kind == WriteKind::kSet ? "\tset" : "\tamend");
}

ReplayResult read_events(std::istream& in) {
  ReplayResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (in.eof()) {
      // No trailing newline: the append never completed.
      if (!line.empty()) result.dropped_torn_tail = true;
      break;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1)
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (fields.size() != 5) throw FormatError(line_no, "expected 5 tab-separated fields");
    const auto tag = PolarityTag::parse(fields[3]);
    if (!tag) throw FormatError(line_no, "tag must be -1, 0 or 1");
    WriteKind kind;
    if (fields[4] == "set")
      kind = WriteKind::kSet;
    else if (fields[4] == "amend")
      kind = WriteKind::kAmend;
    else
      throw FormatError(line_no, "action must be \"set\" or \"amend\"");
    result.events.push_back({{fields[0], fields[1], fields[2], *tag, std::nullopt}, kind});
  }
  return result;
}

void apply_events(AnnotationMatrix& matrix, const std::vector<LogEvent>& events) {
  std::size_t n = 0;
  for (const auto& e : events) {
    ++n;
    try {
      const bool occupied =
          matrix.tag(e.record.lemma, e.record.domain, e.record.annotator).has_value();
      if (e.kind == WriteKind::kAmend && !occupied)
        throw ValidationError("amend of an untagged cell");
      matrix.add_record(e.record, e.kind == WriteKind::kAmend);
    } catch (const std::exception& ex) {
      throw FormatError(0, "event " + std::to_string(n) + ": " + ex.what());
    }
  }
}

std::uintmax_t repair_torn_tail(const std::filesystem::path& path) {
  std::error_code ec;
  const std::uintmax_t size = std::filesystem::file_size(path, ec);
  if (ec || size == 0) return 0;
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t last_newline = content.find_last_of('\n');
  const std::uintmax_t keep = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (keep == size) return 0;
  std::filesystem::resize_file(path, keep);
  return size - keep;
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0)
    throw std::system_error(errno, std::generic_category(), "open " + path_.string());
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

void EventLog::append(const LogEvent& event) {
  const std::string line = format_event(event) + '\n';
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "write " + path_.string());
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0)
    throw std::system_error(errno, std::generic_category(), "fsync " + path_.string());
}

}  // namespace polarlex

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarlex/annotation.h"
#include "polarlex/event_log.h"
#include "polarlex/stats.h"

namespace polarlex {

inline constexpr std::string_view kLogFileName = "annotations.log";
inline constexpr std::string_view kLemmaFileName = "lemmas.txt";
inline constexpr std::string_view kDomainFileName = "domains.txt";
inline constexpr std::string_view kInstructionsFileName = "instructions.txt";

// Shown with every work item unless the data directory overrides it.
inline constexpr std::string_view kDefaultInstructions =
    "Judge the adjective as a feature of the domain shown, not in general. "
    "-1: it describes something bad in this domain. "
    "0: it is irrelevant here or not clearly good or bad. "
    "1: it describes something good in this domain.";

struct WorkItem {
  std::string lemma;
  std::string domain;
  std::size_t position = 0;  // 1-based
  std::size_t total = 0;
};

struct ProgressEntry {
  std::string annotator;
  std::string domain;
  std::size_t tagged = 0;
  std::size_t total = 0;
};

struct ProgressView {
  std::vector<ProgressEntry> entries;
  double overall = 0.0;  // tagged cells / (lemmas * domains * annotators)
};

struct DomainAgreement {
  std::string domain;
  std::optional<KappaResult> result;  // nullopt: no lemma fully covered yet
};

// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view text);

// Deterministic order of every (lemma, domain) pair for one annotator: each
// domain gets its own seeded shuffle of the lemma list and the domains are
// interleaved round-robin. Indices refer to `lemmas` and `domains`.
std::vector<std::pair<std::size_t, std::size_t>> annotation_queue(
    std::size_t lemma_count, std::size_t domain_count, std::uint64_t seed);

// Per-domain kappa over lemmas tagged by every annotator that has tagged
// anything; domains with no such lemma (or fewer than 2 raters) report
// nullopt.
std::vector<DomainAgreement> live_agreement(const AnnotationMatrix& matrix);

// Live annotation sessions over a data directory holding lemmas.txt,
// domains.txt and the annotations.log event log. Thread-safe: submissions
// are serialized through the log; reads use immutable matrix snapshots.
class AnnotationService {
 public:
  // Loads the rosters and replays the log. Throws std::runtime_error (or a
  // subclass) when the directory is unusable.
  explicit AnnotationService(std::filesystem::path data_dir);

  std::string create_session(const std::string& annotator);

  // Next untagged item without advancing; nullopt when exhausted. Throws
  // NotFoundError for unknown sessions.
  std::optional<WorkItem> next_item(const std::string& session_id);

  // Appends to the log and fsyncs before applying. Throws NotFoundError,
  // ConflictError or ValidationError.
  WriteKind submit(const std::string& session_id, const std::string& lemma,
                   const std::string& domain, PolarityTag tag, bool amend);

  ProgressView progress() const;
  std::vector<DomainAgreement> agreement() const;

  std::shared_ptr<const AnnotationMatrix> snapshot() const;
  const std::string& instructions() const { return instructions_; }
  // Hash of the lemma and domain rosters; part of the queue seed.
  const std::string& dataset_version() const { return dataset_version_; }
  bool recovered_torn_tail() const { return recovered_torn_tail_; }

 private:
  struct Session {
    std::string annotator;
    std::vector<std::pair<std::size_t, std::size_t>> queue;
    std::size_t cursor = 0;
  };

  Session& find_session(const std::string& id);
  void skip_tagged(Session& s, const AnnotationMatrix& m) const;

  std::filesystem::path data_dir_;
  std::vector<std::string> lemmas_;
  std::vector<std::string> domains_;
  std::string instructions_;
  std::string dataset_version_;
  bool recovered_torn_tail_ = false;

  std::mutex write_mutex_;  // serializes log appends and working_ updates
  AnnotationMatrix working_;
  std::unique_ptr<EventLog> log_;

  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const AnnotationMatrix> snapshot_;

  mutable std::mutex session_mutex_;
  std::unordered_map<std::string, Session> sessions_;
  std::vector<std::string> session_annotators_;  // first-appearance order
};

}  // namespace polarlex

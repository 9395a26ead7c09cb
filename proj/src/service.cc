#include "polarlex/service.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "polarlex/corpus.h"
#include "polarlex/error.h"

namespace polarlex {

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Uniform in [0, bound) by rejection; std::uniform_int_distribution is not
// portable across standard libraries.
std::size_t bounded(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t n = bound;
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

std::vector<std::string> read_roster(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    auto names = read_lemma_list(in);
    if (names.empty()) throw std::runtime_error(path.string() + " is empty");
    return names;
  } catch (const FormatError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> annotation_queue(std::size_t lemma_count,
                                                                  std::size_t domain_count,
                                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> orders(domain_count);
  for (auto& order : orders) {
    order.resize(lemma_count);
    for (std::size_t i = 0; i < lemma_count; ++i) order[i] = i;
    for (std::size_t i = lemma_count; i > 1; --i) std::swap(order[i - 1], order[bounded(rng, i)]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  queue.reserve(lemma_count * domain_count);
  for (std::size_t pos = 0; pos < lemma_count; ++pos)
    for (std::size_t d = 0; d < domain_count; ++d) queue.emplace_back(orders[d][pos], d);
  return queue;
}

std::vector<DomainAgreement> live_agreement(const AnnotationMatrix& matrix) {
  std::vector<DomainAgreement> out;
  for (const auto& domain : matrix.domains()) {
    DomainAgreement a{domain, std::nullopt};
    if (matrix.annotators().size() >= 2) {
      std::vector<std::vector<PolarityTag>> items;
      for (const auto& lemma : matrix.lemmas())
        if (auto tags = matrix.domain_tags(lemma, domain)) items.push_back(std::move(*tags));
      if (!items.empty()) a.result = multi_rater_kappa(domain, items);
    }
    out.push_back(std::move(a));
  }
  return out;
}

AnnotationService::AnnotationService(std::filesystem::path data_dir)
    : data_dir_(std::move(data_dir)) {
  if (!std::filesystem::is_directory(data_dir_))
    throw std::runtime_error("data directory does not exist: " + data_dir_.string());
  lemmas_ = read_roster(data_dir_ / kLemmaFileName);
  domains_ = read_roster(data_dir_ / kDomainFileName);

  instructions_ = std::string(kDefaultInstructions);
  if (std::ifstream in(data_dir_ / kInstructionsFileName); in) {
    std::ostringstream text;
    text << in.rdbuf();
    if (!text.str().empty()) instructions_ = text.str();
  }

  std::string roster_text;
  for (const auto& l : lemmas_) roster_text += l + '\n';
  roster_text += '\x1f';
  for (const auto& d : domains_) roster_text += d + '\n';
  dataset_version_ = fmt::format("{:016x}", stable_hash(roster_text));

  working_ = AnnotationMatrix::with_roster(lemmas_, domains_);
  const auto log_path = data_dir_ / kLogFileName;
  if (std::filesystem::exists(log_path)) {
    std::ifstream in(log_path, std::ios::binary);
    ReplayResult replay;
    try {
      replay = read_events(in);
      apply_events(working_, replay.events);
    } catch (const FormatError& e) {
      throw std::runtime_error(log_path.string() + ": " + e.what());
    }
    if (replay.dropped_torn_tail) {
      repair_torn_tail(log_path);
      recovered_torn_tail_ = true;
    }
  }
  log_ = std::make_unique<EventLog>(log_path);
  snapshot_ = std::make_shared<const AnnotationMatrix>(working_);
}

std::shared_ptr<const AnnotationMatrix> AnnotationService::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

std::string AnnotationService::create_session(const std::string& annotator) {
  validate_identifier("annotator", annotator);
  static thread_local std::mt19937_64 id_rng{std::random_device{}()};
  const auto snap = snapshot();

  Session s;
  s.annotator = annotator;
  const std::uint64_t seed = stable_hash(annotator + '\x1f' + dataset_version_);
  for (const auto& item : annotation_queue(lemmas_.size(), domains_.size(), seed)) {
    if (!snap->tag(lemmas_[item.first], domains_[item.second], annotator)) s.queue.push_back(item);
  }

  std::lock_guard lock(session_mutex_);
  std::string id;
  do id = fmt::format("{:016x}", id_rng()); while (sessions_.count(id) != 0);
  sessions_.emplace(id, std::move(s));
  if (std::find(session_annotators_.begin(), session_annotators_.end(), annotator) ==
      session_annotators_.end())
    session_annotators_.push_back(annotator);
  return id;
}

AnnotationService::Session& AnnotationService::find_session(const std::string& id) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

void AnnotationService::skip_tagged(Session& s, const AnnotationMatrix& m) const {
  while (s.cursor < s.queue.size()) {
    const auto [l, d] = s.queue[s.cursor];
    if (!m.tag(lemmas_[l], domains_[d], s.annotator)) break;
    ++s.cursor;
  }
}

std::optional<WorkItem> AnnotationService::next_item(const std::string& session_id) {
  const auto snap = snapshot();
  std::lock_guard lock(session_mutex_);
  Session& s = find_session(session_id);
  // Items tagged through another session of the same annotator are skipped.
  skip_tagged(s, *snap);
  if (s.cursor == s.queue.size()) return std::nullopt;
  const auto [l, d] = s.queue[s.cursor];
  return WorkItem{lemmas_[l], domains_[d], s.cursor + 1, s.queue.size()};
}

WriteKind AnnotationService::submit(const std::string& session_id, const std::string& lemma,
                                    const std::string& domain, PolarityTag tag, bool amend) {
  std::string annotator;
  {
    std::lock_guard lock(session_mutex_);
    annotator = find_session(session_id).annotator;
  }
  const AnnotationRecord record{lemma, domain, annotator, tag, std::nullopt};
  WriteKind kind;
  std::shared_ptr<const AnnotationMatrix> published;
  {
    std::lock_guard lock(write_mutex_);
    kind = working_.check_record(record, amend);
    log_->append({record, kind});
    working_.add_record(record, amend);
    published = std::make_shared<const AnnotationMatrix>(working_);
    std::lock_guard snap_lock(snapshot_mutex_);
    snapshot_ = published;
  }
  {
    std::lock_guard lock(session_mutex_);
    skip_tagged(find_session(session_id), *published);
  }
  return kind;
}

ProgressView AnnotationService::progress() const {
  const auto snap = snapshot();
  std::vector<std::string> annotators = snap->annotators();
  {
    std::lock_guard lock(session_mutex_);
    for (const auto& a : session_annotators_)
      if (std::find(annotators.begin(), annotators.end(), a) == annotators.end())
        annotators.push_back(a);
  }
  ProgressView view;
  std::size_t tagged = 0;
  for (const auto& a : annotators) {
    for (const auto& d : domains_) {
      const std::size_t n = snap->tagged_count(a, d);
      tagged += n;
      view.entries.push_back({a, d, n, lemmas_.size()});
    }
  }
  const std::size_t capacity = annotators.size() * domains_.size() * lemmas_.size();
  view.overall = capacity == 0 ? 0.0 : static_cast<double>(tagged) / static_cast<double>(capacity);
  return view;
}

std::vector<DomainAgreement> AnnotationService::agreement() const {
  return live_agreement(*snapshot());
}

}  // namespace polarlex

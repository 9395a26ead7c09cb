#include "polarlex/annotation.h"

#include <algorithm>
#include <set>

#include "polarlex/error.h"
#include "polarlex/unicode.h"

namespace polarlex {

PolarityTag PolarityTag::from_int(int value) {
  if (value < -1 || value > 1)
    throw ValidationError("polarity tag must be -1, 0 or 1, got " + std::to_string(value));
  return PolarityTag(value);
}

std::optional<PolarityTag> PolarityTag::parse(std::string_view text) {
  if (text == "-1") return negative();
  if (text == "0") return neutral();
  if (text == "1") return positive();
  return std::nullopt;
}

std::string PolarityTag::to_string() const { return std::to_string(value_); }

std::vector<PolarityTag> make_tags(std::initializer_list<int> values) {
  std::vector<PolarityTag> tags;
  tags.reserve(values.size());
  for (int v : values) tags.push_back(PolarityTag::from_int(v));
  return tags;
}

void validate_identifier(std::string_view what, std::string_view value) {
  if (value.empty()) throw ValidationError(std::string(what) + " is empty");
  if (value.find_first_of("\t\n\r") != std::string_view::npos)
    throw ValidationError(std::string(what) + " contains a tab or newline");
  if (!is_valid_utf8(value)) throw ValidationError(std::string(what) + " is not valid UTF-8");
}

void validate_record(const AnnotationRecord& record) {
  validate_identifier("lemma", record.lemma);
  validate_identifier("domain", record.domain);
  validate_identifier("annotator", record.annotator);
}

bool Roster::contains(std::string_view name) const { return index_of(name).has_value(); }

std::optional<std::size_t> Roster::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Roster::add(const std::string& name) {
  const auto [it, inserted] = index_.emplace(name, names_.size());
  if (inserted) names_.push_back(name);
  return it->second;
}

AnnotationMatrix AnnotationMatrix::with_roster(const std::vector<std::string>& lemmas,
                                               const std::vector<std::string>& domains,
                                               const std::vector<std::string>& annotators) {
  AnnotationMatrix m(Policy{true, true, !annotators.empty()});
  for (const auto& l : lemmas) m.register_lemma(l);
  for (const auto& d : domains) m.register_domain(d);
  for (const auto& a : annotators) m.register_annotator(a);
  return m;
}

void AnnotationMatrix::register_lemma(const std::string& lemma) {
  validate_identifier("lemma", lemma);
  lemmas_.add(lemma);
}

void AnnotationMatrix::register_domain(const std::string& domain) {
  validate_identifier("domain", domain);
  domains_.add(domain);
}

void AnnotationMatrix::register_annotator(const std::string& annotator) {
  validate_identifier("annotator", annotator);
  annotators_.add(annotator);
}

WriteKind AnnotationMatrix::check_record(const AnnotationRecord& record, bool amend) const {
  validate_record(record);
  if (policy_.fixed_lemmas && !lemmas_.contains(record.lemma))
    throw ValidationError("unknown lemma: " + record.lemma);
  if (policy_.fixed_domains && !domains_.contains(record.domain))
    throw ValidationError("unknown domain: " + record.domain);
  if (policy_.fixed_annotators && !annotators_.contains(record.annotator))
    throw ValidationError("unknown annotator: " + record.annotator);
  if (!tag(record.lemma, record.domain, record.annotator)) return WriteKind::kSet;
  if (!amend)
    throw ConflictError("cell already tagged: (" + record.lemma + ", " + record.domain + ", " +
                        record.annotator + ")");
  return WriteKind::kAmend;
}

WriteKind AnnotationMatrix::add_record(const AnnotationRecord& record, bool amend) {
  const WriteKind kind = check_record(record, amend);
  const Key key{lemmas_.add(record.lemma), domains_.add(record.domain),
                annotators_.add(record.annotator)};
  cells_[key] = record.tag;
  return kind;
}

std::optional<AnnotationMatrix::Key> AnnotationMatrix::find_key(
    std::string_view lemma, std::string_view domain, std::string_view annotator) const {
  const auto l = lemmas_.index_of(lemma);
  const auto d = domains_.index_of(domain);
  const auto a = annotators_.index_of(annotator);
  if (!l || !d || !a) return std::nullopt;
  return Key{*l, *d, *a};
}

std::optional<PolarityTag> AnnotationMatrix::tag(std::string_view lemma,
                                                 std::string_view domain,
                                                 std::string_view annotator) const {
  const auto key = find_key(lemma, domain, annotator);
  if (!key) return std::nullopt;
  const auto it = cells_.find(*key);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

bool AnnotationMatrix::lemma_domain_complete(std::string_view lemma,
                                             std::string_view domain) const {
  return domain_tags(lemma, domain).has_value();
}

bool AnnotationMatrix::lemma_complete(std::string_view lemma) const {
  if (!lemmas_.contains(lemma)) return false;
  return std::all_of(domains().begin(), domains().end(),
                     [&](const std::string& d) { return lemma_domain_complete(lemma, d); });
}

std::optional<std::vector<PolarityTag>> AnnotationMatrix::domain_tags(
    std::string_view lemma, std::string_view domain) const {
  const auto l = lemmas_.index_of(lemma);
  const auto d = domains_.index_of(domain);
  if (!l || !d) return std::nullopt;
  std::vector<PolarityTag> tags;
  tags.reserve(annotators_.size());
  for (std::size_t a = 0; a < annotators_.size(); ++a) {
    const auto it = cells_.find(Key{*l, *d, a});
    if (it == cells_.end()) return std::nullopt;
    tags.push_back(it->second);
  }
  return tags;
}

std::size_t AnnotationMatrix::tagged_count(std::string_view annotator,
                                           std::string_view domain) const {
  const auto d = domains_.index_of(domain);
  const auto a = annotators_.index_of(annotator);
  if (!d || !a) return 0;
  std::size_t n = 0;
  for (std::size_t l = 0; l < lemmas_.size(); ++l) n += cells_.count(Key{l, *d, *a});
  return n;
}

std::vector<AnnotationRecord> AnnotationMatrix::sorted_records() const {
  std::vector<AnnotationRecord> records;
  records.reserve(cells_.size());
  for (const auto& [key, tag] : cells_) {
    const auto& [l, d, a] = key;
    records.push_back({lemmas()[l], domains()[d], annotators()[a], tag, std::nullopt});
  }
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.lemma, x.domain, x.annotator) < std::tie(y.lemma, y.domain, y.annotator);
  });
  return records;
}

bool AnnotationMatrix::operator==(const AnnotationMatrix& other) const {
  const auto same_names = [](const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
    return std::set<std::string>(a.begin(), a.end()) == std::set<std::string>(b.begin(), b.end());
  };
  return same_names(lemmas(), other.lemmas()) && same_names(domains(), other.domains()) &&
         same_names(annotators(), other.annotators()) &&
         sorted_records() == other.sorted_records();
}

std::vector<CellKey> completeness(const AnnotationMatrix& matrix) {
  std::vector<CellKey> missing;
  for (const auto& l : matrix.lemmas())
    for (const auto& d : matrix.domains())
      for (const auto& a : matrix.annotators())
        if (!matrix.tag(l, d, a)) missing.push_back({l, d, a});
  return missing;
}

AnnotationMatrix import_tsv(std::istream& in) {
  AnnotationMatrix matrix;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != kAnnotationHeader)
        throw FormatError(line_no, "expected header \"lemma\\tdomain\\tannotator\\ttag\"");
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1)
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (fields.size() != 4) throw FormatError(line_no, "expected 4 tab-separated fields");
    const auto tag = PolarityTag::parse(fields[3]);
    if (!tag) throw FormatError(line_no, "tag must be -1, 0 or 1, got \"" + fields[3] + "\"");
    try {
      matrix.add_record({fields[0], fields[1], fields[2], *tag, std::nullopt}, false);
    } catch (const ConflictError& e) {
      throw FormatError(line_no, e.what());
    } catch (const ValidationError& e) {
      throw FormatError(line_no, e.what());
    }
  }
  return matrix;
}

std::string format_row(const AnnotationRecord& record) {
  return record.lemma + '\t' + record.domain + '\t' + record.annotator + '\t' +
         record.tag.to_string();
}

std::string export_tsv(const AnnotationMatrix& matrix) {
  std::string out(kAnnotationHeader);
  out += '\n';
  for (const auto& r : matrix.sorted_records()) {
    out += format_row(r);
    out += '\n';
  }
  return out;
}

}  // namespace polarlex

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace polarlex {

// One annotator's judgment of one adjective in one domain: -1, 0 or +1.
class PolarityTag {
 public:
  constexpr PolarityTag() = default;

  // Throws ValidationError outside {-1, 0, 1}.
  static PolarityTag from_int(int value);
  // Accepts exactly "-1", "0" or "1".
  static std::optional<PolarityTag> parse(std::string_view text);

  static constexpr PolarityTag negative() { return PolarityTag(-1); }
  static constexpr PolarityTag neutral() { return PolarityTag(0); }
  static constexpr PolarityTag positive() { return PolarityTag(1); }

  constexpr int value() const { return value_; }
  std::string to_string() const;

  constexpr auto operator<=>(const PolarityTag&) const = default;

 private:
  constexpr explicit PolarityTag(int v) : value_(static_cast<std::int8_t>(v)) {}
  std::int8_t value_ = 0;
};

std::vector<PolarityTag> make_tags(std::initializer_list<int> values);

struct AnnotationRecord {
  std::string lemma;
  std::string domain;
  std::string annotator;
  PolarityTag tag;
  std::optional<std::int64_t> recorded_at;  // unix seconds

  // Timestamps do not take part in equality.
  bool operator==(const AnnotationRecord& o) const {
    return lemma == o.lemma && domain == o.domain && annotator == o.annotator && tag == o.tag;
  }
};

// Throws ValidationError when `value` is empty, holds a tab or newline, or
// is not UTF-8. `what` names the field in the message.
void validate_identifier(std::string_view what, std::string_view value);

// Throws ValidationError for an empty field or one with tabs or newlines.
void validate_record(const AnnotationRecord& record);

struct CellKey {
  std::string lemma;
  std::string domain;
  std::string annotator;

  auto operator<=>(const CellKey&) const = default;
};

enum class WriteKind { kSet, kAmend };

// Ordered, deduplicated list of names with O(1) index lookup.
class Roster {
 public:
  bool contains(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Returns the index of `name`, appending it when new.
  std::size_t add(const std::string& name);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Polarity tags indexed by (lemma, domain, annotator).
//
// Each axis is either open (names are registered by their first record) or
// fixed (records naming an unregistered entry are rejected). Rosters keep
// first-appearance order.
class AnnotationMatrix {
 public:
  struct Policy {
    bool fixed_lemmas = false;
    bool fixed_domains = false;
    bool fixed_annotators = false;
  };

  AnnotationMatrix() = default;
  explicit AnnotationMatrix(Policy policy) : policy_(policy) {}

  // Matrix whose lemma and domain axes are fixed to the given lists and whose
  // annotator axis is fixed iff `annotators` is non-empty.
  static AnnotationMatrix with_roster(const std::vector<std::string>& lemmas,
                                      const std::vector<std::string>& domains,
                                      const std::vector<std::string>& annotators = {});

  // Explicit registration ignores the policy.
  void register_lemma(const std::string& lemma);
  void register_domain(const std::string& domain);
  void register_annotator(const std::string& annotator);

  // Stores the record's tag. Throws ConflictError when the cell is already
  // set and `amend` is false; ValidationError for malformed records or names
  // outside a fixed roster. Returns whether the write created or replaced
  // the cell.
  WriteKind add_record(const AnnotationRecord& record, bool amend);

  // Checks add_record's preconditions without modifying the matrix.
  WriteKind check_record(const AnnotationRecord& record, bool amend) const;

  std::optional<PolarityTag> tag(std::string_view lemma, std::string_view domain,
                                 std::string_view annotator) const;

  const std::vector<std::string>& lemmas() const { return lemmas_.names(); }
  const std::vector<std::string>& domains() const { return domains_.names(); }
  const std::vector<std::string>& annotators() const { return annotators_.names(); }
  const Policy& policy() const { return policy_; }

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t capacity() const { return lemmas_.size() * domains_.size() * annotators_.size(); }
  bool complete() const { return cell_count() == capacity(); }
  bool lemma_complete(std::string_view lemma) const;
  bool lemma_domain_complete(std::string_view lemma, std::string_view domain) const;

  // Every annotator's tag for (lemma, domain) in roster order; nullopt if any
  // annotator has not tagged it.
  std::optional<std::vector<PolarityTag>> domain_tags(std::string_view lemma,
                                                      std::string_view domain) const;

  // Number of tags `annotator` has given in `domain`.
  std::size_t tagged_count(std::string_view annotator, std::string_view domain) const;

  // All cells sorted by (lemma, domain, annotator).
  std::vector<AnnotationRecord> sorted_records() const;

  // Same names on each axis (order ignored) and same cells.
  bool operator==(const AnnotationMatrix& other) const;

 private:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

  std::optional<Key> find_key(std::string_view lemma, std::string_view domain,
                              std::string_view annotator) const;

  Policy policy_;
  Roster lemmas_;
  Roster domains_;
  Roster annotators_;
  std::map<Key, PolarityTag> cells_;
};

// Triples with no tag, lemma-major then domain then annotator, each axis in
// roster order.
std::vector<CellKey> completeness(const AnnotationMatrix& matrix);

inline constexpr std::string_view kAnnotationHeader = "lemma\tdomain\tannotator\ttag";

// Reads the annotation TSV. Rosters are inferred in first-appearance order.
// An empty stream yields an empty matrix. Throws FormatError with the line
// number for a bad header, bad tag, malformed row or repeated cell.
AnnotationMatrix import_tsv(std::istream& in);

// Header plus one row per cell sorted by (lemma, domain, annotator).
std::string export_tsv(const AnnotationMatrix& matrix);

// One TSV data row without trailing newline.
std::string format_row(const AnnotationRecord& record);

}  // namespace polarlex

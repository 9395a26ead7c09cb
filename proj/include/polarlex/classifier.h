#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polarlex/annotation.h"
#include "polarlex/stats.h"

namespace polarlex {

enum class SubjectivityClass { kConstant, kMixed, kHighlySubjective };

std::string_view to_string(SubjectivityClass c);
SubjectivityClass parse_subjectivity(std::string_view name);

class DependenceClass {
 public:
  enum class Kind { kIndependent, kDependent };

  static DependenceClass independent(PolarityTag polarity) { return {Kind::kIndependent, polarity}; }
  static DependenceClass dependent() { return {Kind::kDependent, std::nullopt}; }

  Kind kind() const { return kind_; }
  bool is_independent() const { return kind_ == Kind::kIndependent; }
  // Present iff independent.
  const std::optional<PolarityTag>& independent_polarity() const { return polarity_; }

  bool operator==(const DependenceClass&) const = default;

 private:
  DependenceClass(Kind kind, std::optional<PolarityTag> polarity)
      : kind_(kind), polarity_(polarity) {}

  Kind kind_;
  std::optional<PolarityTag> polarity_;
};

std::string_view to_string(DependenceClass::Kind k);
DependenceClass::Kind parse_dependence(std::string_view name);

struct ClassifierConfig {
  // A domain deviates iff its stddev is strictly greater than tau.
  double tau = 0.0;

  // Throws UsageError for negative or non-finite tau.
  void validate() const;

  bool operator==(const ClassifierConfig&) const = default;
};

SubjectivityClass classify_subjectivity(std::span<const double> per_domain_stddevs,
                                        const ClassifierConfig& config);

// `tags_by_domain` must have a non-empty list for each name in `domains`
// (ValidationError otherwise). Independent iff all tags in all domains agree.
DependenceClass classify_dependence(std::span<const std::string> domains,
                                    const std::map<std::string, std::vector<PolarityTag>>& tags_by_domain);

// Diagnostic view: true when per-domain tendencies are not all equal. Not
// used for classification.
bool tendency_varies_across_domains(std::span<const DomainStats> per_domain);

// Constant within every domain yet not unanimous across domains.
bool constant_exception_flag(SubjectivityClass subjectivity, const DependenceClass& dependence);

struct ClassifiedLemma {
  SubjectivityClass subjectivity = SubjectivityClass::kConstant;
  DependenceClass dependence = DependenceClass::dependent();
};

struct SummaryReport {
  std::int64_t total_lemmas = 0;
  std::int64_t dependent = 0;
  std::int64_t independent = 0;
  std::int64_t independent_neutral = 0;
  std::int64_t independent_negative = 0;
  std::int64_t independent_positive = 0;
  std::int64_t constant = 0;
  std::int64_t mixed = 0;
  std::int64_t highly_subjective = 0;
  std::vector<KappaResult> kappas;
  std::vector<std::string> diagnostics;

  // Percentages of total_lemmas, unrounded.
  double percent(std::int64_t count) const;
  double pct_dependent() const { return percent(dependent); }
  double pct_independent() const { return percent(independent); }
  double pct_neutral() const { return percent(independent_neutral); }
  double pct_negative() const { return percent(independent_negative); }
  double pct_positive() const { return percent(independent_positive); }
  double pct_constant() const { return percent(constant); }
  double pct_mixed() const { return percent(mixed); }
  double pct_highly_subjective() const { return percent(highly_subjective); }
  // Exact 2-decimal rendering of a count's percentage.
  std::string percent_text(std::int64_t count) const;

  bool operator==(const SummaryReport&) const = default;
};

// Throws UsageError for an empty entry list.
SummaryReport summarize(std::span<const ClassifiedLemma> entries, std::vector<KappaResult> kappas);

}  // namespace polarlex

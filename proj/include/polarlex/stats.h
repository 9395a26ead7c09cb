#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polarlex/annotation.h"

namespace polarlex {

// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  // Throws UsageError for a zero denominator.
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Decimal with `places` digits, rounding half away from zero in exact
  // integer arithmetic.
  std::string to_fixed(int places = 2) const;
  // "n/d", or "n" when the denominator is 1.
  std::string to_string() const;
  // Inverse of to_string. Throws FormatError.
  static Rational parse(std::string_view text);

  bool operator==(const Rational&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Rounds half away from zero to `places` decimals and formats the result.
std::string format_fixed(double value, int places = 2);

enum class Tendency { kPositive, kNegative, kNeutral };

std::string_view to_string(Tendency t);
// Throws FormatError for unknown names.
Tendency parse_tendency(std::string_view name);

// Sign of an exact tag sum or mean.
Tendency tendency_of_sign(int sign);

// Throws UsageError on an empty list.
Rational domain_mean(std::span<const PolarityTag> tags);
Tendency tendency(std::span<const PolarityTag> tags);

// Sample (n-1) standard deviation. Throws UsageError for fewer than 2 tags.
double sample_stddev(std::span<const PolarityTag> tags);

struct DomainStats {
  std::string lemma;
  std::string domain;
  std::vector<PolarityTag> tags;  // annotator roster order
  std::int64_t tag_sum = 0;
  std::int64_t rater_count = 0;
  Rational mean;
  double stddev = 0.0;
  Tendency tendency = Tendency::kNeutral;

  // Needs at least 2 tags.
  static DomainStats compute(std::string lemma, std::string domain,
                             std::vector<PolarityTag> tags);

  bool operator==(const DomainStats&) const = default;
};

// Diagnostic: sample stddev over all of a lemma's tags pooled across domains.
double pooled_stddev(std::span<const DomainStats> per_domain);

struct KappaResult {
  std::string domain;
  double kappa = 0.0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  std::int64_t item_count = 0;
  std::int64_t rater_count = 0;

  bool operator==(const KappaResult&) const = default;
};

// Agreement on one item: fraction of agreeing rater pairs, via the closed
// form (sum_j n_j^2 - k) / (k (k - 1)). Needs at least 2 tags.
double item_agreement(std::span<const PolarityTag> tags);

// Fixed-marginal multi-rater kappa (Fleiss) over the items of one domain.
// Every item must carry the same number k >= 2 of tags. When all tags fall
// into one category the chance agreement is 1 and kappa is reported as 1.
// Throws UsageError on an empty slice or k < 2, ValidationError on ragged
// rater counts.
KappaResult multi_rater_kappa(std::string domain,
                              std::span<const std::vector<PolarityTag>> items);

}  // namespace polarlex

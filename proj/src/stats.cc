#include "polarlex/stats.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "polarlex/error.h"

namespace polarlex {

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw UsageError("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Rational::to_fixed(int places) const {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const std::int64_t mag = std::llabs(num_) * scale;
  // Half away from zero on the magnitude.
  const std::int64_t rounded = (2 * mag + den_) / (2 * den_);
  std::string digits = std::to_string(rounded / scale);
  if (places > 0) {
    std::string frac = std::to_string(rounded % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    digits += '.' + frac;
  }
  return (num_ < 0 && rounded != 0 ? "-" : "") + digits;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + '/' + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw FormatError(0, "bad rational \"" + std::string(text) + "\"");
    return v;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw FormatError(0, "bad rational \"" + std::string(text) + "\"");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string format_fixed(double value, int places) {
  const double scale = std::pow(10.0, places);
  const double rounded = std::round(value * scale) / scale;  // half away from zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, rounded == 0.0 ? 0.0 : rounded);
  return buf;
}

std::string_view to_string(Tendency t) {
  switch (t) {
    case Tendency::kPositive:
      return "positive";
    case Tendency::kNegative:
      return "negative";
    case Tendency::kNeutral:
      return "neutral";
  }
  return "neutral";
}

Tendency parse_tendency(std::string_view name) {
  if (name == "positive") return Tendency::kPositive;
  if (name == "negative") return Tendency::kNegative;
  if (name == "neutral") return Tendency::kNeutral;
  throw FormatError(0, "unknown tendency \"" + std::string(name) + "\"");
}

Tendency tendency_of_sign(int sign) {
  if (sign > 0) return Tendency::kPositive;
  if (sign < 0) return Tendency::kNegative;
  return Tendency::kNeutral;
}

namespace {

std::int64_t sum_of(std::span<const PolarityTag> tags) {
  std::int64_t sum = 0;
  for (const auto t : tags) sum += t.value();
  return sum;
}

}  // namespace

Rational domain_mean(std::span<const PolarityTag> tags) {
  if (tags.empty()) throw UsageError("mean of an empty tag list");
  return Rational(sum_of(tags), static_cast<std::int64_t>(tags.size()));
}

Tendency tendency(std::span<const PolarityTag> tags) {
  if (tags.empty()) throw UsageError("tendency of an empty tag list");
  const std::int64_t sum = sum_of(tags);
  return tendency_of_sign((sum > 0) - (sum < 0));
}

double sample_stddev(std::span<const PolarityTag> tags) {
  if (tags.size() < 2) throw UsageError("sample standard deviation needs at least 2 tags");
  // n * sum (x - mean)^2 = n * sum x^2 - (sum x)^2, exact in integers.
  const auto n = static_cast<std::int64_t>(tags.size());
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (const auto t : tags) {
    sum += t.value();
    sum_sq += t.value() * t.value();
  }
  const std::int64_t scaled_ss = n * sum_sq - sum * sum;
  return std::sqrt(static_cast<double>(scaled_ss) / static_cast<double>(n * (n - 1)));
}

DomainStats DomainStats::compute(std::string lemma, std::string domain,
                                 std::vector<PolarityTag> tags) {
  DomainStats s;
  s.lemma = std::move(lemma);
  s.domain = std::move(domain);
  s.tag_sum = sum_of(tags);
  s.rater_count = static_cast<std::int64_t>(tags.size());
  s.mean = domain_mean(tags);
  s.stddev = sample_stddev(tags);
  s.tendency = polarlex::tendency(tags);
  s.tags = std::move(tags);
  return s;
}

double pooled_stddev(std::span<const DomainStats> per_domain) {
  std::vector<PolarityTag> all;
  for (const auto& s : per_domain) all.insert(all.end(), s.tags.begin(), s.tags.end());
  return sample_stddev(all);
}

namespace {

std::size_t category(PolarityTag t) { return static_cast<std::size_t>(t.value() + 1); }

}  // namespace

double item_agreement(std::span<const PolarityTag> tags) {
  if (tags.size() < 2) throw UsageError("item agreement needs at least 2 tags");
  std::array<std::int64_t, 3> n{};
  for (const auto t : tags) ++n[category(t)];
  const auto k = static_cast<std::int64_t>(tags.size());
  const std::int64_t sum_sq = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  return static_cast<double>(sum_sq - k) / static_cast<double>(k * (k - 1));
}

KappaResult multi_rater_kappa(std::string domain,
                              std::span<const std::vector<PolarityTag>> items) {
  if (items.empty()) throw UsageError("kappa over an empty item set");
  const std::size_t k = items.front().size();
  if (k < 2) throw UsageError("kappa needs at least 2 raters per item");
  std::array<std::int64_t, 3> totals{};
  double observed_sum = 0.0;
  for (const auto& item : items) {
    if (item.size() != k)
      throw ValidationError("ragged rater counts in domain " + domain + ": " +
                            std::to_string(item.size()) + " vs " + std::to_string(k));
    for (const auto t : item) ++totals[category(t)];
    observed_sum += item_agreement(item);
  }
  const double assignments = static_cast<double>(items.size() * k);
  double expected = 0.0;
  for (const auto c : totals) {
    const double p = static_cast<double>(c) / assignments;
    expected += p * p;
  }
  KappaResult r;
  r.domain = std::move(domain);
  r.item_count = static_cast<std::int64_t>(items.size());
  r.rater_count = static_cast<std::int64_t>(k);
  const bool single_category =
      std::count(totals.begin(), totals.end(), 0) == static_cast<std::ptrdiff_t>(totals.size() - 1);
  if (single_category) {
    r.observed_agreement = 1.0;
    r.expected_agreement = 1.0;
    r.kappa = 1.0;
    return r;
  }
  r.observed_agreement = observed_sum / static_cast<double>(items.size());
  r.expected_agreement = expected;
  r.kappa = (r.observed_agreement - expected) / (1.0 - expected);
  return r;
}

}  // namespace polarlex

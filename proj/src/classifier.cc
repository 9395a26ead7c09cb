#include "polarlex/classifier.h"

#include <algorithm>
#include <cmath>

#include "polarlex/error.h"

namespace polarlex {

std::string_view to_string(SubjectivityClass c) {
  switch (c) {
    case SubjectivityClass::kConstant:
      return "constant";
    case SubjectivityClass::kMixed:
      return "mixed";
    case SubjectivityClass::kHighlySubjective:
      return "highly_subjective";
  }
  return "constant";
}

SubjectivityClass parse_subjectivity(std::string_view name) {
  if (name == "constant") return SubjectivityClass::kConstant;
  if (name == "mixed") return SubjectivityClass::kMixed;
  if (name == "highly_subjective") return SubjectivityClass::kHighlySubjective;
  throw FormatError(0, "unknown subjectivity class \"" + std::string(name) + "\"");
}

std::string_view to_string(DependenceClass::Kind k) {
  return k == DependenceClass::Kind::kIndependent ? "independent" : "dependent";
}

DependenceClass::Kind parse_dependence(std::string_view name) {
  if (name == "independent") return DependenceClass::Kind::kIndependent;
  if (name == "dependent") return DependenceClass::Kind::kDependent;
  throw FormatError(0, "unknown dependence class \"" + std::string(name) + "\"");
}

void ClassifierConfig::validate() const {
  if (!std::isfinite(tau) || tau < 0.0)
    throw UsageError("deviation threshold tau must be a finite value >= 0");
}

SubjectivityClass classify_subjectivity(std::span<const double> per_domain_stddevs,
                                        const ClassifierConfig& config) {
  config.validate();
  if (per_domain_stddevs.empty()) throw UsageError("no per-domain deviations to classify");
  std::size_t deviating = 0;
  for (const double s : per_domain_stddevs) {
    if (!(s >= 0.0)) throw UsageError("standard deviation must be >= 0");
    if (s > config.tau) ++deviating;
  }
  if (deviating == 0) return SubjectivityClass::kConstant;
  if (deviating == per_domain_stddevs.size()) return SubjectivityClass::kHighlySubjective;
  return SubjectivityClass::kMixed;
}

DependenceClass classify_dependence(
    std::span<const std::string> domains,
    const std::map<std::string, std::vector<PolarityTag>>& tags_by_domain) {
  if (domains.empty()) throw ValidationError("no domains to compare");
  std::optional<PolarityTag> first;
  bool unanimous = true;
  for (const auto& d : domains) {
    const auto it = tags_by_domain.find(d);
    if (it == tags_by_domain.end() || it->second.empty())
      throw ValidationError("missing tags for domain " + d);
    for (const auto t : it->second) {
      if (!first) first = t;
      unanimous = unanimous && t == *first;
    }
  }
  return unanimous ? DependenceClass::independent(*first) : DependenceClass::dependent();
}

bool tendency_varies_across_domains(std::span<const DomainStats> per_domain) {
  return std::adjacent_find(per_domain.begin(), per_domain.end(),
                            [](const DomainStats& a, const DomainStats& b) {
                              return a.tendency != b.tendency;
                            }) != per_domain.end();
}

bool constant_exception_flag(SubjectivityClass subjectivity, const DependenceClass& dependence) {
  return subjectivity == SubjectivityClass::kConstant && !dependence.is_independent();
}

double SummaryReport::percent(std::int64_t count) const {
  if (total_lemmas == 0) return 0.0;
  return 100.0 * static_cast<double>(count) / static_cast<double>(total_lemmas);
}

std::string SummaryReport::percent_text(std::int64_t count) const {
  if (total_lemmas == 0) return "0.00";
  return Rational(100 * count, total_lemmas).to_fixed(2);
}

SummaryReport summarize(std::span<const ClassifiedLemma> entries, std::vector<KappaResult> kappas) {
  if (entries.empty()) throw UsageError("cannot summarize an empty lexicon");
  SummaryReport r;
  r.total_lemmas = static_cast<std::int64_t>(entries.size());
  for (const auto& e : entries) {
    switch (e.subjectivity) {
      case SubjectivityClass::kConstant:
        ++r.constant;
        break;
      case SubjectivityClass::kMixed:
        ++r.mixed;
        break;
      case SubjectivityClass::kHighlySubjective:
        ++r.highly_subjective;
        break;
    }
    if (!e.dependence.is_independent()) {
      ++r.dependent;
      continue;
    }
    ++r.independent;
    switch (e.dependence.independent_polarity()->value()) {
      case -1:
        ++r.independent_negative;
        break;
      case 0:
        ++r.independent_neutral;
        break;
      default:
        ++r.independent_positive;
        break;
    }
  }
  r.kappas = std::move(kappas);
  if (r.independent > r.constant)
    r.diagnostics.push_back(
        "domain-independent share exceeds constant share; unanimity across all domains "
        "implies zero deviation, so this input was not classified by these rules");
  return r;
}

}  // namespace polarlex

#include "polarlex/classifier.h"

#include <random>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "polarlex/error.h"

namespace polarlex {
namespace {

using testing::kDomains;
using testing::tags_of;

std::map<std::string, std::vector<PolarityTag>> by_domain(const testing::LemmaTags& lemma) {
  std::map<std::string, std::vector<PolarityTag>> out;
  for (std::size_t d = 0; d < kDomains.size(); ++d) out[kDomains[d]] = tags_of(lemma.per_domain[d]);
  return out;
}

TEST(ClassifySubjectivity, ReferenceExamples) {
  const ClassifierConfig config;
  EXPECT_EQ(classify_subjectivity(std::vector{1.10, 0.55, 0.45}, config),
            SubjectivityClass::kHighlySubjective);
  EXPECT_EQ(classify_subjectivity(std::vector{0.84, 0.0, 0.45}, config), SubjectivityClass::kMixed);
  EXPECT_EQ(classify_subjectivity(std::vector{0.0, 0.0, 0.0}, config), SubjectivityClass::kConstant);
}

TEST(ClassifySubjectivity, ThresholdIsStrict) {
  const ClassifierConfig config{0.5};
  EXPECT_EQ(classify_subjectivity(std::vector{0.5, 0.5}, config), SubjectivityClass::kConstant);
  EXPECT_EQ(classify_subjectivity(std::vector{0.51, 0.5}, config), SubjectivityClass::kMixed);
}

TEST(ClassifySubjectivity, Errors) {
  EXPECT_THROW(classify_subjectivity(std::vector<double>{}, {}), UsageError);
  EXPECT_THROW(classify_subjectivity(std::vector{-0.1}, {}), UsageError);
  EXPECT_THROW(classify_subjectivity(std::vector{0.1}, ClassifierConfig{-1.0}), UsageError);
}

TEST(ClassifySubjectivity, MonotoneInTau) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 1.5);
  const auto rank = [](SubjectivityClass c) {
    return c == SubjectivityClass::kConstant ? 0 : c == SubjectivityClass::kMixed ? 1 : 2;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> s(3);
    for (auto& x : s) x = rng() % 3 == 0 ? 0.0 : dist(rng);
    const double lo = dist(rng);
    const double hi = lo + dist(rng);
    const auto a = classify_subjectivity(s, {lo});
    const auto b = classify_subjectivity(s, {hi});
    // Raising tau never moves toward highly subjective.
    EXPECT_LE(rank(b), rank(a)) << "lo=" << lo << " hi=" << hi;
    std::size_t dev_lo = 0, dev_hi = 0;
    for (double x : s) {
      dev_lo += x > lo;
      dev_hi += x > hi;
    }
    EXPECT_LE(dev_hi, dev_lo);
  }
}

TEST(ClassifyDependence, Bello) {
  const auto c = classify_dependence(kDomains, by_domain(testing::kBello));
  EXPECT_TRUE(c.is_independent());
  EXPECT_EQ(c.independent_polarity(), PolarityTag::positive());
}

TEST(ClassifyDependence, Antiguo) {
  const auto c = classify_dependence(kDomains, by_domain(testing::kAntiguo));
  EXPECT_FALSE(c.is_independent());
  EXPECT_FALSE(c.independent_polarity());
}

TEST(ClassifyDependence, AllZero) {
  const testing::LemmaTags zeros{"amarillo", {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}};
  const auto c = classify_dependence(kDomains, by_domain(zeros));
  EXPECT_EQ(c, DependenceClass::independent(PolarityTag::neutral()));
}

TEST(ClassifyDependence, MissingDomain) {
  auto tags = by_domain(testing::kBello);
  tags.erase("films");
  EXPECT_THROW(classify_dependence(kDomains, tags), ValidationError);
  tags["films"] = {};
  EXPECT_THROW(classify_dependence(kDomains, tags), ValidationError);
}

TEST(ConstantExceptionFlag, Cases) {
  // Unanimous +1 in cars and phones, unanimous 0 in films.
  const testing::LemmaTags fiable{"fiable", {{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}}};
  const auto dep = classify_dependence(kDomains, by_domain(fiable));
  const auto subj = classify_subjectivity(std::vector{0.0, 0.0, 0.0}, {});
  EXPECT_TRUE(constant_exception_flag(subj, dep));

  EXPECT_FALSE(constant_exception_flag(SubjectivityClass::kConstant,
                                       classify_dependence(kDomains, by_domain(testing::kBello))));
  EXPECT_FALSE(constant_exception_flag(SubjectivityClass::kMixed,
                                       classify_dependence(kDomains, by_domain(testing::kAgresivo))));
}

TEST(TendencyDiagnostic, ComparesDomainTendencies) {
  std::vector<DomainStats> stats;
  for (std::size_t d = 0; d < 3; ++d)
    stats.push_back(DomainStats::compute("antiguo", kDomains[d], tags_of(testing::kAntiguo.per_domain[d])));
  EXPECT_TRUE(tendency_varies_across_domains(stats));
  stats.clear();
  for (std::size_t d = 0; d < 3; ++d)
    stats.push_back(DomainStats::compute("bello", kDomains[d], tags_of(testing::kBello.per_domain[d])));
  EXPECT_FALSE(tendency_varies_across_domains(stats));
}

ClassifiedLemma classified(SubjectivityClass s, std::optional<int> independent = std::nullopt) {
  return {s, independent ? DependenceClass::independent(PolarityTag::from_int(*independent))
                         : DependenceClass::dependent()};
}

TEST(Summarize, UniformSplit) {
  const std::vector<ClassifiedLemma> entries = {classified(SubjectivityClass::kHighlySubjective),
                                                classified(SubjectivityClass::kMixed),
                                                classified(SubjectivityClass::kConstant, 1)};
  const auto r = summarize(entries, {});
  EXPECT_EQ(r.percent_text(r.highly_subjective), "33.33");
  EXPECT_EQ(r.percent_text(r.mixed), "33.33");
  EXPECT_EQ(r.percent_text(r.constant), "33.33");
  EXPECT_NEAR(r.pct_constant() + r.pct_mixed() + r.pct_highly_subjective(), 100.0, 1e-9);
  EXPECT_EQ(r.independent_positive, 1);
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Summarize, AllIndependentNeutral) {
  const std::vector<ClassifiedLemma> entries(4, classified(SubjectivityClass::kConstant, 0));
  const auto r = summarize(entries, {});
  EXPECT_DOUBLE_EQ(r.pct_independent(), 100.0);
  EXPECT_DOUBLE_EQ(r.pct_neutral(), 100.0);
  EXPECT_DOUBLE_EQ(r.pct_dependent(), 0.0);
}

TEST(Summarize, SplitOf514Lemmas) {
  // Rounding identities first: 100*c/514 to 2 decimals.
  EXPECT_EQ(Rational(100 * 114, 514).to_fixed(2), "22.18");
  EXPECT_EQ(Rational(100 * 239, 514).to_fixed(2), "46.50");
  EXPECT_EQ(Rational(100 * 161, 514).to_fixed(2), "31.32");
  std::vector<ClassifiedLemma> entries;
  entries.insert(entries.end(), 114, classified(SubjectivityClass::kHighlySubjective));
  entries.insert(entries.end(), 239, classified(SubjectivityClass::kMixed));
  entries.insert(entries.end(), 161, classified(SubjectivityClass::kConstant, 0));
  const auto r = summarize(entries, {});
  EXPECT_EQ(r.total_lemmas, 514);
  EXPECT_EQ(r.percent_text(r.highly_subjective), "22.18");
  EXPECT_EQ(r.percent_text(r.mixed), "46.50");
  EXPECT_EQ(r.percent_text(r.constant), "31.32");
}

TEST(Summarize, SubsetViolationEmitsDiagnostic) {
  // Not producible by the classifiers; fed in directly.
  const std::vector<ClassifiedLemma> entries = {classified(SubjectivityClass::kMixed, 1)};
  EXPECT_EQ(summarize(entries, {}).diagnostics.size(), 1u);
}

TEST(Summarize, EmptyIsUsageError) {
  EXPECT_THROW(summarize(std::vector<ClassifiedLemma>{}, {}), UsageError);
}

}  // namespace
}  // namespace polarlex

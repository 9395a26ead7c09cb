#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polarlex/annotation.h"
#include "polarlex/classifier.h"
#include "polarlex/stats.h"

namespace polarlex {

struct LexiconEntry {
  std::string lemma;
  std::vector<DomainStats> per_domain;  // lexicon domain order
  Rational overall_mean;
  Tendency overall_tendency = Tendency::kNeutral;
  SubjectivityClass subjectivity = SubjectivityClass::kConstant;
  DependenceClass dependence = DependenceClass::dependent();
  bool constant_exception = false;

  const DomainStats* stats_for(std::string_view domain) const;

  bool operator==(const LexiconEntry&) const = default;
};

// Aggregates one lemma's complete per-domain tag lists (in `domains` order)
// into a classified entry.
LexiconEntry classify_lemma(const std::string& lemma, const std::vector<std::string>& domains,
                            const std::vector<std::vector<PolarityTag>>& tags_per_domain,
                            const ClassifierConfig& config);

struct Lexicon {
  std::vector<std::string> domains;
  std::vector<std::string> annotators;
  std::vector<LexiconEntry> entries;  // sorted by lemma, unique
  ClassifierConfig config;
  SummaryReport report;

  bool operator==(const Lexicon&) const = default;
};

struct LexiconBuild {
  Lexicon lexicon;
  // One line per skipped (incomplete) lemma, naming its missing triples.
  std::vector<std::string> warnings;
};

// Classifies every complete lemma of `matrix`; incomplete lemmas are skipped
// with a warning. Kappa per domain covers the included lemmas. Throws
// UsageError when fewer than two annotators are registered or no lemma is
// complete.
LexiconBuild build_lexicon(const AnnotationMatrix& matrix, const ClassifierConfig& config);

enum class LexiconFormat { kStructured, kTabular };

inline constexpr int kLexiconVersion = 1;

std::string write_lexicon(const Lexicon& lexicon, LexiconFormat format);

// Reads the structured (JSON) format. Throws FormatError.
Lexicon read_lexicon(std::string_view text);

// Fixed-width dependence split, subjectivity split and per-domain kappa.
std::string render_report(const SummaryReport& report);

}  // namespace polarlex

#pragma once

#include <string>
#include <vector>

#include "polarlex/annotation.h"

namespace polarlex::testing {

inline const std::vector<std::string> kDomains = {"cars", "phones", "films"};
inline const std::vector<std::string> kAnnotators = {"a1", "a2", "a3", "a4", "a5"};

struct LemmaTags {
  std::string lemma;
  std::vector<std::vector<int>> per_domain;  // kDomains order, kAnnotators order
};

// Reference annotation vectors for "antiguo", "agresivo" and "bello".
inline const LemmaTags kAntiguo{"antiguo", {{-1, -1, 1, -1, 1}, {-1, -1, -1, 0, 0}, {0, 1, 1, 1, 1}}};
inline const LemmaTags kAgresivo{"agresivo", {{0, 1, 0, 1, -1}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, -1}}};
inline const LemmaTags kBello{"bello", {{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}}};

inline void add_lemma(AnnotationMatrix& m, const LemmaTags& lemma,
                      const std::vector<std::string>& domains = kDomains,
                      const std::vector<std::string>& annotators = kAnnotators) {
  for (std::size_t d = 0; d < domains.size(); ++d)
    for (std::size_t a = 0; a < annotators.size(); ++a)
      m.add_record({lemma.lemma, domains[d], annotators[a],
                    PolarityTag::from_int(lemma.per_domain[d][a]), std::nullopt},
                   false);
}

inline AnnotationMatrix reference_matrix() {
  AnnotationMatrix m;
  add_lemma(m, kAntiguo);
  add_lemma(m, kAgresivo);
  add_lemma(m, kBello);
  return m;
}

inline std::vector<PolarityTag> tags_of(const std::vector<int>& values) {
  std::vector<PolarityTag> out;
  for (int v : values) out.push_back(PolarityTag::from_int(v));
  return out;
}

// All 3^n ternary vectors.
inline std::vector<std::vector<PolarityTag>> all_vectors(int n) {
  std::vector<std::vector<PolarityTag>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<PolarityTag>> next;
    for (const auto& v : out)
      for (int t = -1; t <= 1; ++t) {
        auto w = v;
        w.push_back(PolarityTag::from_int(t));
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace polarlex::testing

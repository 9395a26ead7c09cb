#include "polarlex/lexicon.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <fmt/format.h>

#include "json.hpp"
#include "polarlex/error.h"

namespace polarlex {

using nlohmann::json;

const DomainStats* LexiconEntry::stats_for(std::string_view domain) const {
  for (const auto& s : per_domain)
    if (s.domain == domain) return &s;
  return nullptr;
}

LexiconEntry classify_lemma(const std::string& lemma, const std::vector<std::string>& domains,
                            const std::vector<std::vector<PolarityTag>>& tags_per_domain,
                            const ClassifierConfig& config) {
  if (domains.size() != tags_per_domain.size())
    throw ValidationError("tag lists do not match the domain list for " + lemma);
  LexiconEntry e;
  e.lemma = lemma;
  std::vector<double> stddevs;
  std::map<std::string, std::vector<PolarityTag>> by_domain;
  std::int64_t sum = 0;
  std::int64_t count = 0;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    auto stats = DomainStats::compute(lemma, domains[i], tags_per_domain[i]);
    sum += stats.tag_sum;
    count += stats.rater_count;
    stddevs.push_back(stats.stddev);
    by_domain[domains[i]] = tags_per_domain[i];
    e.per_domain.push_back(std::move(stats));
  }
  e.overall_mean = Rational(sum, count);
  e.overall_tendency = tendency_of_sign(e.overall_mean.sign());
  e.subjectivity = classify_subjectivity(stddevs, config);
  e.dependence = classify_dependence(domains, by_domain);
  e.constant_exception = constant_exception_flag(e.subjectivity, e.dependence);
  return e;
}

LexiconBuild build_lexicon(const AnnotationMatrix& matrix, const ClassifierConfig& config) {
  config.validate();
  if (matrix.annotators().size() < 2)
    throw UsageError("at least 2 annotators are needed, found " +
                     std::to_string(matrix.annotators().size()));
  if (matrix.domains().empty()) throw UsageError("no domains in the annotation data");

  LexiconBuild out;
  Lexicon& lex = out.lexicon;
  lex.domains = matrix.domains();
  lex.annotators = matrix.annotators();
  lex.config = config;

  std::vector<std::string> lemmas = matrix.lemmas();
  std::sort(lemmas.begin(), lemmas.end());
  std::vector<std::vector<std::vector<PolarityTag>>> kappa_items(lex.domains.size());

  for (const auto& lemma : lemmas) {
    std::vector<std::vector<PolarityTag>> per_domain;
    std::vector<std::string> missing;
    for (const auto& d : lex.domains) {
      auto tags = matrix.domain_tags(lemma, d);
      if (tags) {
        per_domain.push_back(std::move(*tags));
        continue;
      }
      for (const auto& a : lex.annotators)
        if (!matrix.tag(lemma, d, a)) missing.push_back("(" + lemma + ", " + d + ", " + a + ")");
    }
    if (!missing.empty()) {
      std::string w = "skipping incomplete lemma \"" + lemma + "\"; missing";
      for (const auto& m : missing) w += " " + m;
      out.warnings.push_back(std::move(w));
      continue;
    }
    for (std::size_t i = 0; i < per_domain.size(); ++i) kappa_items[i].push_back(per_domain[i]);
    lex.entries.push_back(classify_lemma(lemma, lex.domains, per_domain, config));
  }
  if (lex.entries.empty()) throw UsageError("no lemma has a complete set of annotations");

  std::vector<KappaResult> kappas;
  for (std::size_t i = 0; i < lex.domains.size(); ++i)
    kappas.push_back(multi_rater_kappa(lex.domains[i], kappa_items[i]));
  std::vector<ClassifiedLemma> classified;
  classified.reserve(lex.entries.size());
  for (const auto& e : lex.entries) classified.push_back({e.subjectivity, e.dependence});
  lex.report = summarize(classified, std::move(kappas));
  return out;
}

namespace {

// Shortest form that reads back to the same double.
std::string real_text(double v) {
  char buf[40];
  for (int precision = 12; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

json kappa_json(const KappaResult& k) {
  return {{"domain", k.domain},
          {"kappa", real_text(k.kappa)},
          {"observed_agreement", real_text(k.observed_agreement)},
          {"expected_agreement", real_text(k.expected_agreement)},
          {"item_count", k.item_count},
          {"rater_count", k.rater_count}};
}

json report_json(const SummaryReport& r) {
  json kappas = json::array();
  for (const auto& k : r.kappas) kappas.push_back(kappa_json(k));
  return {{"total_lemmas", r.total_lemmas},
          {"counts",
           {{"dependent", r.dependent},
            {"independent", r.independent},
            {"independent_neutral", r.independent_neutral},
            {"independent_negative", r.independent_negative},
            {"independent_positive", r.independent_positive},
            {"constant", r.constant},
            {"mixed", r.mixed},
            {"highly_subjective", r.highly_subjective}}},
          {"percentages",
           {{"dependent", r.percent_text(r.dependent)},
            {"independent", r.percent_text(r.independent)},
            {"independent_neutral", r.percent_text(r.independent_neutral)},
            {"independent_negative", r.percent_text(r.independent_negative)},
            {"independent_positive", r.percent_text(r.independent_positive)},
            {"constant", r.percent_text(r.constant)},
            {"mixed", r.percent_text(r.mixed)},
            {"highly_subjective", r.percent_text(r.highly_subjective)}}},
          {"kappas", kappas},
          {"diagnostics", r.diagnostics}};
}

std::string write_structured(const Lexicon& lex) {
  json entries = json::array();
  for (const auto& e : lex.entries) {
    json per_domain = json::object();
    for (const auto& s : e.per_domain) {
      json tags = json::array();
      for (const auto t : s.tags) tags.push_back(t.value());
      per_domain[s.domain] = {{"mean", s.mean.to_string()},
                              {"stddev", real_text(s.stddev)},
                              {"tendency", to_string(s.tendency)},
                              {"tags", tags}};
    }
    const auto& polarity = e.dependence.independent_polarity();
    entries.push_back({{"lemma", e.lemma},
                       {"per_domain", per_domain},
                       {"overall_mean", e.overall_mean.to_string()},
                       {"overall_tendency", to_string(e.overall_tendency)},
                       {"subjectivity", to_string(e.subjectivity)},
                       {"dependence", to_string(e.dependence.kind())},
                       {"independent_polarity", polarity ? json(polarity->value()) : json(nullptr)},
                       {"constant_exception", e.constant_exception}});
  }
  json doc = {{"version", kLexiconVersion},
              {"domains", lex.domains},
              {"annotators", lex.annotators},
              {"config", {{"tau", real_text(lex.config.tau)}}},
              {"entries", entries},
              {"report", report_json(lex.report)}};
  return doc.dump(2) + '\n';
}

std::string write_tabular(const Lexicon& lex) {
  std::string out =
      "lemma\tdomain\tmean\tstddev\ttendency\tsubjectivity\tdependence\tconstant_exception\n";
  for (const auto& e : lex.entries) {
    for (const auto& s : e.per_domain) {
      out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", e.lemma, s.domain, s.mean.to_fixed(2),
                         format_fixed(s.stddev, 2), to_string(s.tendency),
                         to_string(e.subjectivity), to_string(e.dependence.kind()),
                         e.constant_exception ? "true" : "false");
    }
  }
  return out;
}

double parse_real(const json& j) {
  const auto text = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size())
    throw FormatError(0, "bad real \"" + text + "\"");
  return v;
}

KappaResult parse_kappa(const json& j) {
  KappaResult k;
  k.domain = j.at("domain").get<std::string>();
  k.kappa = parse_real(j.at("kappa"));
  k.observed_agreement = parse_real(j.at("observed_agreement"));
  k.expected_agreement = parse_real(j.at("expected_agreement"));
  k.item_count = j.at("item_count").get<std::int64_t>();
  k.rater_count = j.at("rater_count").get<std::int64_t>();
  return k;
}

SummaryReport parse_report(const json& j) {
  SummaryReport r;
  r.total_lemmas = j.at("total_lemmas").get<std::int64_t>();
  const json& c = j.at("counts");
  r.dependent = c.at("dependent").get<std::int64_t>();
  r.independent = c.at("independent").get<std::int64_t>();
  r.independent_neutral = c.at("independent_neutral").get<std::int64_t>();
  r.independent_negative = c.at("independent_negative").get<std::int64_t>();
  r.independent_positive = c.at("independent_positive").get<std::int64_t>();
  r.constant = c.at("constant").get<std::int64_t>();
  r.mixed = c.at("mixed").get<std::int64_t>();
  r.highly_subjective = c.at("highly_subjective").get<std::int64_t>();
  for (const auto& k : j.at("kappas")) r.kappas.push_back(parse_kappa(k));
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return r;
}

LexiconEntry parse_entry(const json& j, const std::vector<std::string>& domains) {
  LexiconEntry e;
  e.lemma = j.at("lemma").get<std::string>();
  const json& per_domain = j.at("per_domain");
  if (per_domain.size() != domains.size())
    throw FormatError(0, "entry \"" + e.lemma + "\" does not cover every domain");
  for (const auto& d : domains) {
    const json& s = per_domain.at(d);
    DomainStats stats;
    stats.lemma = e.lemma;
    stats.domain = d;
    for (const auto& t : s.at("tags")) {
      stats.tags.push_back(PolarityTag::from_int(t.get<int>()));
      stats.tag_sum += stats.tags.back().value();
    }
    stats.rater_count = static_cast<std::int64_t>(stats.tags.size());
    stats.mean = Rational::parse(s.at("mean").get<std::string>());
    stats.stddev = parse_real(s.at("stddev"));
    stats.tendency = parse_tendency(s.at("tendency").get<std::string>());
    e.per_domain.push_back(std::move(stats));
  }
  e.overall_mean = Rational::parse(j.at("overall_mean").get<std::string>());
  e.overall_tendency = parse_tendency(j.at("overall_tendency").get<std::string>());
  e.subjectivity = parse_subjectivity(j.at("subjectivity").get<std::string>());
  const auto kind = parse_dependence(j.at("dependence").get<std::string>());
  const json& polarity = j.at("independent_polarity");
  if (kind == DependenceClass::Kind::kIndependent) {
    if (polarity.is_null()) throw FormatError(0, "independent entry without polarity");
    e.dependence = DependenceClass::independent(PolarityTag::from_int(polarity.get<int>()));
  } else {
    if (!polarity.is_null()) throw FormatError(0, "dependent entry with a polarity");
    e.dependence = DependenceClass::dependent();
  }
  e.constant_exception = j.at("constant_exception").get<bool>();
  if (e.constant_exception && !constant_exception_flag(e.subjectivity, e.dependence))
    throw FormatError(0, "constant_exception set on a non-constant or independent entry");
  return e;
}

}  // namespace

std::string write_lexicon(const Lexicon& lexicon, LexiconFormat format) {
  return format == LexiconFormat::kStructured ? write_structured(lexicon) : write_tabular(lexicon);
}

Lexicon read_lexicon(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const int version = doc.at("version").get<int>();
    if (version != kLexiconVersion)
      throw FormatError(0, "unsupported lexicon version " + std::to_string(version));
    Lexicon lex;
    lex.domains = doc.at("domains").get<std::vector<std::string>>();
    lex.annotators = doc.at("annotators").get<std::vector<std::string>>();
    lex.config.tau = parse_real(doc.at("config").at("tau"));
    std::set<std::string> seen;
    for (const auto& j : doc.at("entries")) {
      lex.entries.push_back(parse_entry(j, lex.domains));
      const auto& lemma = lex.entries.back().lemma;
      if (!seen.insert(lemma).second) throw FormatError(0, "duplicate entry \"" + lemma + "\"");
    }
    if (!std::is_sorted(lex.entries.begin(), lex.entries.end(),
                        [](const auto& a, const auto& b) { return a.lemma < b.lemma; }))
      throw FormatError(0, "entries are not sorted by lemma");
    lex.report = parse_report(doc.at("report"));
    return lex;
  } catch (const json::exception& e) {
    throw FormatError(0, std::string("malformed lexicon: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(0, std::string("malformed lexicon: ") + e.what());
  } catch (const UsageError& e) {
    throw FormatError(0, std::string("malformed lexicon: ") + e.what());
  }
}

}  // namespace polarlex

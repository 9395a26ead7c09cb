#include <fmt/format.h>

#include "polarlex/lexicon.h"

namespace polarlex {

std::string render_report(const SummaryReport& r) {
  std::string out;
  const auto row = [&](std::string_view label, std::int64_t count) {
    out += fmt::format("{:<24}{:>10}%{:>8}\n", label, r.percent_text(count), count);
  };
  const auto rule = [&] { out += std::string(43, '-') + '\n'; };

  out += fmt::format("Lemmas analysed: {}\n\n", r.total_lemmas);

  out += fmt::format("{:<24}{:>11}{:>8}\n", "Type", "Percentage", "Count");
  rule();
  row("Domain independent", r.independent);
  row("  neutral", r.independent_neutral);
  row("  negative", r.independent_negative);
  row("  positive", r.independent_positive);
  row("Domain dependent", r.dependent);
  out += '\n';

  out += fmt::format("{:<24}{:>11}{:>8}\n", "Type", "Percentage", "Count");
  rule();
  row("Highly subjective", r.highly_subjective);
  row("Mixed", r.mixed);
  row("Constant", r.constant);
  out += '\n';

  out += fmt::format("{:<16}{:>8}{:>10}{:>10}{:>7}{:>8}\n", "Domain", "Kappa", "Observed",
                     "Expected", "Items", "Raters");
  out += std::string(59, '-') + '\n';
  for (const auto& k : r.kappas) {
    out += fmt::format("{:<16}{:>8.4f}{:>10.4f}{:>10.4f}{:>7}{:>8}\n", k.domain, k.kappa,
                       k.observed_agreement, k.expected_agreement, k.item_count, k.rater_count);
  }
  for (const auto& d : r.diagnostics) out += "\nnote: " + d + '\n';
  return out;
}

}  // namespace polarlex

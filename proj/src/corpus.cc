#include "polarlex/corpus.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "polarlex/error.h"
#include "polarlex/unicode.h"

namespace polarlex {
namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

TagsetRule::TagsetRule(Mode mode, std::vector<std::string> patterns)
    : mode_(mode), patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw UsageError("tagset rule needs at least one pattern");
  std::set<std::string> seen;
  for (const auto& p : patterns_) {
    if (p.empty()) throw UsageError("tagset rule pattern is empty");
    if (!seen.insert(p).second)
      throw UsageError("tagset rule pattern repeated: " + p);
  }
}

TagsetRule TagsetRule::eagles() { return TagsetRule(Mode::kPrefix, {"A"}); }

TagsetRule TagsetRule::upos() { return TagsetRule(Mode::kExact, {"ADJ"}); }

bool TagsetRule::matches(std::string_view pos) const {
  return std::any_of(patterns_.begin(), patterns_.end(), [&](const std::string& p) {
    return mode_ == Mode::kPrefix ? pos.starts_with(p) : pos == p;
  });
}

DomainCorpus parse_tagged_stream(std::istream& in, std::string domain) {
  DomainCorpus corpus{std::move(domain), {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!is_valid_utf8(line)) throw FormatError(line_no, "invalid UTF-8");
    if (is_blank(line) || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 3)
      throw FormatError(line_no, "expected 3 tab-separated fields (form, lemma, pos), got " +
                                     std::to_string(fields.size()));
    if (fields[1].empty()) throw FormatError(line_no, "empty lemma");
    if (fields[2].empty()) throw FormatError(line_no, "empty pos tag");
    corpus.tokens.push_back(
        {std::string(fields[0]), fold_case(fields[1]), std::string(fields[2])});
  }
  return corpus;
}

std::string serialize_tagged(const DomainCorpus& corpus) {
  std::string out;
  for (const auto& t : corpus.tokens) {
    out += t.form;
    out += '\t';
    out += t.lemma;
    out += '\t';
    out += t.pos;
    out += '\n';
  }
  return out;
}

LemmaFrequency extract_adjectives(const DomainCorpus& corpus, const TagsetRule& rule) {
  LemmaFrequency inventory{corpus.domain, {}};
  for (const auto& t : corpus.tokens) {
    if (rule.matches(t.pos)) ++inventory.counts[t.lemma];
  }
  return inventory;
}

LemmaFrequency apply_min_frequency(LemmaFrequency inventory, std::uint64_t min_frequency) {
  std::erase_if(inventory.counts,
                [&](const auto& kv) { return kv.second < min_frequency; });
  return inventory;
}

std::vector<std::string> shared_lemmas(std::span<const LemmaFrequency> inventories) {
  if (inventories.size() < 2)
    throw UsageError("intersection needs at least 2 inventories");
  std::set<std::string_view> domains;
  for (const auto& inv : inventories) {
    if (!domains.insert(inv.domain).second)
      throw UsageError("duplicate domain in intersection: " + inv.domain);
  }
  std::vector<std::string> shared;
  // std::map keys are already in byte order, which for UTF-8 is code point order.
  for (const auto& [lemma, count] : inventories.front().counts) {
    const bool everywhere =
        std::all_of(inventories.begin() + 1, inventories.end(), [&](const LemmaFrequency& inv) {
          const auto it = inv.counts.find(lemma);
          return it != inv.counts.end() && it->second >= 1;
        });
    if (everywhere && count >= 1) shared.push_back(lemma);
  }
  return shared;
}

std::string write_frequency_file(const LemmaFrequency& inventory) {
  std::ostringstream out;
  out << "# domain: " << inventory.domain << '\n';
  for (const auto& [lemma, count] : inventory.counts) out << lemma << '\t' << count << '\n';
  return out.str();
}

LemmaFrequency read_frequency_file(std::istream& in) {
  static constexpr std::string_view kDomainPrefix = "# domain: ";
  LemmaFrequency inventory;
  bool have_domain = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (!is_valid_utf8(line)) throw FormatError(line_no, "invalid UTF-8");
    if (line.starts_with(kDomainPrefix)) {
      if (have_domain) throw FormatError(line_no, "second domain header");
      inventory.domain = line.substr(kDomainPrefix.size());
      if (inventory.domain.empty()) throw FormatError(line_no, "empty domain name");
      have_domain = true;
      continue;
    }
    if (is_blank(line) || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty())
      throw FormatError(line_no, "expected \"lemma<TAB>count\"");
    std::uint64_t count = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), count);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() || count == 0)
      throw FormatError(line_no, "count must be a positive integer");
    if (!inventory.counts.emplace(std::string(fields[0]), count).second)
      throw FormatError(line_no, "lemma repeated: " + std::string(fields[0]));
  }
  if (!have_domain) throw FormatError(0, "missing \"# domain: NAME\" header");
  return inventory;
}

std::string write_lemma_list(std::span<const std::string> lemmas) {
  std::string out;
  for (const auto& l : lemmas) {
    out += l;
    out += '\n';
  }
  return out;
}

std::vector<std::string> read_lemma_list(std::istream& in) {
  std::vector<std::string> lemmas;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank(line)) continue;
    if (!is_valid_utf8(line)) throw FormatError(line_no, "invalid UTF-8");
    if (line.find('\t') != std::string::npos) throw FormatError(line_no, "tab inside lemma");
    if (!seen.insert(line).second) throw FormatError(line_no, "lemma repeated: " + line);
    lemmas.push_back(line);
  }
  return lemmas;
}

}  // namespace polarlex

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polarlex {

struct TaggedToken {
  std::string form;
  std::string lemma;  // case-folded
  std::string pos;

  bool operator==(const TaggedToken&) const = default;
};

struct DomainCorpus {
  std::string domain;
  std::vector<TaggedToken> tokens;

  std::size_t token_count() const { return tokens.size(); }
};

// Decides which POS tags denote adjectives.
class TagsetRule {
 public:
  enum class Mode { kPrefix, kExact };

  // Throws UsageError when `patterns` is empty, holds an empty string or
  // repeats a pattern.
  TagsetRule(Mode mode, std::vector<std::string> patterns);

  // EAGLES tags (FreeLing): adjectives start with "A".
  static TagsetRule eagles();
  // Universal dependencies tagset: exactly "ADJ".
  static TagsetRule upos();

  bool matches(std::string_view pos) const;

  Mode mode() const { return mode_; }
  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  Mode mode_;
  std::vector<std::string> patterns_;
};

struct LemmaFrequency {
  std::string domain;
  std::map<std::string, std::uint64_t> counts;

  bool operator==(const LemmaFrequency&) const = default;
};

// Reads the token-per-line "form<TAB>lemma<TAB>pos" format. Blank lines are
// sentence breaks, '#' lines are comments, extra columns are ignored.
// Throws FormatError with the 1-based line number on malformed lines or
// invalid UTF-8.
DomainCorpus parse_tagged_stream(std::istream& in, std::string domain);

// One token per line in the same column order; parse_tagged_stream reads it
// back to the same token sequence.
std::string serialize_tagged(const DomainCorpus& corpus);

LemmaFrequency extract_adjectives(const DomainCorpus& corpus,
                                  const TagsetRule& rule);

// Drops lemmas seen fewer than `min_frequency` times.
LemmaFrequency apply_min_frequency(LemmaFrequency inventory,
                                   std::uint64_t min_frequency);

// Lemmas present in every inventory, sorted by code point (byte order of
// UTF-8). Throws UsageError for fewer than two inventories or a repeated
// domain.
std::vector<std::string> shared_lemmas(std::span<const LemmaFrequency> inventories);

// Lemma-frequency file: "# domain: NAME" followed by "lemma<TAB>count" lines
// sorted by lemma.
std::string write_frequency_file(const LemmaFrequency& inventory);
LemmaFrequency read_frequency_file(std::istream& in);

// Lemma list file: one lemma per line, sorted.
std::string write_lemma_list(std::span<const std::string> lemmas);
std::vector<std::string> read_lemma_list(std::istream& in);

}  // namespace polarlex

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dycklab/grammar.hpp"
#include "dycklab/language.hpp"

namespace dycklab {

// A subset of a spec's alphabet, stored as a bitmask over alphabet indices.
class SymbolSet {
 public:
  SymbolSet() = default;
  static SymbolSet openings(const LanguageSpec& spec) {
    SymbolSet s;
    s.mask_ = (1u << spec.pair_count()) - 1;
    return s;
  }

  void add(int alphabet_index) { mask_ |= 1u << alphabet_index; }
  bool contains(int alphabet_index) const { return mask_ >> alphabet_index & 1u; }
  uint32_t mask() const { return mask_; }
  int size() const { return __builtin_popcount(mask_); }
  bool operator==(const SymbolSet&) const = default;

  std::vector<Symbol> symbols(const LanguageSpec& spec) const;

 private:
  uint32_t mask_ = 0;
};

// Membership. Dyck-k simulates a pushdown store of pair indices; Shuffle-k
// simulates k counters that must stay non-negative and end at zero.
// Throws ForeignSymbolError for symbols outside the alphabet.
bool membership(const LanguageSpec& spec, const SymbolString& s);

// The set of symbols that can legally follow `prefix`: every opening, plus
// the closing of the stack top (Dyck) or of every pair with a positive
// counter (Shuffle). Throws DeadPrefixError when the prefix extends no member.
SymbolSet next_symbols(const LanguageSpec& spec, const SymbolString& prefix);

// Element t is next_symbols over the length-(t+1) prefix of s; s must be a
// member, so the last element is openings-only.
std::vector<SymbolSet> target_sequence(const LanguageSpec& spec, const SymbolString& s);

// Independent search oracle: a symbol is allowed after `prefix` iff
// prefix+symbol extends to a member within `horizon` further symbols. Bounded
// exhaustive search; never consults the machine recognizers above.
// Throws DataError when |prefix| + horizon > 24.
SymbolSet brute_force_next_symbols(const LanguageSpec& spec, const SymbolString& prefix,
                                   int horizon);

// Running open-minus-close count for one pair; other symbols leave it flat.
std::vector<int> depth_profile(const SymbolString& s, const ParenPair& pair);

// Total outstanding openings, maximized over time (0 for the empty string).
int max_total_depth(const SymbolString& s, const LanguageSpec& spec);

struct CorpusStats {
  std::map<int, size_t> length_histogram;
  std::map<int, size_t> max_depth_histogram;
};

CorpusStats corpus_stats(const Corpus& corpus);

}  // namespace dycklab

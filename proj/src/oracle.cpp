#include "dycklab/oracle.hpp"

#include <algorithm>

namespace dycklab {

std::vector<Symbol> SymbolSet::symbols(const LanguageSpec& spec) const {
  std::vector<Symbol> out;
  for (int i = 0; i < spec.dimension(); ++i)
    if (contains(i)) out.push_back(spec.alphabet()[i]);
  return out;
}

namespace {

// Shared recognizer state: a pushdown store of pair indices for Dyck, one
// counter per pair for Shuffle.
struct Machine {
  explicit Machine(const LanguageSpec& spec)
      : spec(spec), counters(spec.pair_count(), 0) {}

  const LanguageSpec& spec;
  std::vector<int> stack;
  std::vector<int64_t> counters;

  // Consume one symbol; false when the symbol kills the prefix.
  bool advance(Symbol s) {
    int idx = spec.require_index(s);
    int k = spec.pair_count();
    bool opening = idx < k;
    int pair = opening ? idx : idx - k;
    if (spec.kind() == Kind::dyck) {
      if (opening) {
        stack.push_back(pair);
        return true;
      }
      if (stack.empty() || stack.back() != pair) return false;
      stack.pop_back();
      return true;
    }
    if (opening) {
      ++counters[pair];
      return true;
    }
    if (counters[pair] == 0) return false;
    --counters[pair];
    return true;
  }

  bool at_accept() const {
    if (spec.kind() == Kind::dyck) return stack.empty();
    return std::all_of(counters.begin(), counters.end(),
                       [](int64_t c) { return c == 0; });
  }

  SymbolSet allowed() const {
    SymbolSet set = SymbolSet::openings(spec);
    int k = spec.pair_count();
    if (spec.kind() == Kind::dyck) {
      if (!stack.empty()) set.add(k + stack.back());
    } else {
      for (int pair = 0; pair < k; ++pair)
        if (counters[pair] > 0) set.add(k + pair);
    }
    return set;
  }
};

}  // namespace

bool membership(const LanguageSpec& spec, const SymbolString& s) {
  Machine machine(spec);
  for (Symbol c : s)
    if (!machine.advance(c)) return false;
  return machine.at_accept();
}

SymbolSet next_symbols(const LanguageSpec& spec, const SymbolString& prefix) {
  Machine machine(spec);
  for (size_t t = 0; t < prefix.size(); ++t)
    if (!machine.advance(prefix[t]))
      throw DeadPrefixError("dead prefix: symbol at position " + std::to_string(t) +
                            " extends no member of " + spec.name());
  return machine.allowed();
}

std::vector<SymbolSet> target_sequence(const LanguageSpec& spec, const SymbolString& s) {
  if (!membership(spec, s))
    throw DataError("target_sequence requires a member of " + spec.name());
  Machine machine(spec);
  std::vector<SymbolSet> targets;
  targets.reserve(s.size());
  for (Symbol c : s) {
    machine.advance(c);
    targets.push_back(machine.allowed());
  }
  return targets;
}

namespace {

// Trackers for the search oracle. Deliberately not the Machine above: Dyck
// validity is tracked by cancelling adjacent matched pairs over raw symbols,
// Shuffle validity by per-pair occurrence counts. A push that returns false
// left the tracker unchanged; such a string stays non-viable under any
// extension, so the search prunes there.
struct DyckTracker {
  const LanguageSpec& spec;
  SymbolString core;  // unmatched openings, in order

  explicit DyckTracker(const LanguageSpec& spec) : spec(spec) {}

  int outstanding() const { return static_cast<int>(core.size()); }

  // undo token: 0 = pushed symbol, 1 = cancelled pair (re-push `partner`)
  struct Undo {
    int action;
    Symbol partner;
  };

  std::optional<Undo> push(Symbol s) {
    if (spec.is_opening(s)) {
      core.push_back(s);
      return Undo{0, 0};
    }
    const auto& pair = spec.pairs()[spec.pair_of(s)];
    if (!core.empty() && core.back() == pair.open) {
      core.pop_back();
      return Undo{1, pair.open};
    }
    return std::nullopt;
  }

  void pop(const Undo& undo) {
    if (undo.action == 0)
      core.pop_back();
    else
      core.push_back(undo.partner);
  }
};

struct ShuffleTracker {
  const LanguageSpec& spec;
  std::vector<int> counts;
  int total = 0;

  explicit ShuffleTracker(const LanguageSpec& spec)
      : spec(spec), counts(spec.pair_count(), 0) {}

  int outstanding() const { return total; }

  struct Undo {
    int pair;
    int delta;
  };

  std::optional<Undo> push(Symbol s) {
    int pair = spec.pair_of(s);
    if (spec.is_opening(s)) {
      ++counts[pair];
      ++total;
      return Undo{pair, 1};
    }
    if (counts[pair] == 0) return std::nullopt;
    --counts[pair];
    --total;
    return Undo{pair, -1};
  }

  void pop(const Undo& undo) {
    counts[undo.pair] -= undo.delta;
    total -= undo.delta;
  }
};

template <class Tracker>
bool completable(Tracker& tracker, const std::vector<Symbol>& order, int budget) {
  int need = tracker.outstanding();
  if (need == 0) return true;
  if (need > budget) return false;
  for (Symbol s : order) {
    auto undo = tracker.push(s);
    if (!undo) continue;
    bool done = completable(tracker, order, budget - 1);
    tracker.pop(*undo);
    if (done) return true;
  }
  return false;
}

template <class Tracker>
SymbolSet search_next_symbols(const LanguageSpec& spec, const SymbolString& prefix,
                              int horizon) {
  // closings first so viable branches terminate quickly
  std::vector<Symbol> order(spec.alphabet().rbegin(), spec.alphabet().rend());
  Tracker tracker(spec);
  bool dead = false;
  for (Symbol c : prefix) {
    if (!tracker.push(c)) {
      dead = true;
      break;
    }
  }
  SymbolSet out;
  if (dead) return out;
  for (int i = 0; i < spec.dimension(); ++i) {
    auto undo = tracker.push(spec.alphabet()[i]);
    if (!undo) continue;
    if (completable(tracker, order, horizon)) out.add(i);
    tracker.pop(*undo);
  }
  return out;
}

}  // namespace

SymbolSet brute_force_next_symbols(const LanguageSpec& spec, const SymbolString& prefix,
                                   int horizon) {
  if (static_cast<int>(prefix.size()) + horizon > 24)
    throw DataError("enumeration budget exceeded: |prefix| + horizon > 24");
  for (Symbol c : prefix) spec.require_index(c);
  if (spec.kind() == Kind::dyck)
    return search_next_symbols<DyckTracker>(spec, prefix, horizon);
  return search_next_symbols<ShuffleTracker>(spec, prefix, horizon);
}

std::vector<int> depth_profile(const SymbolString& s, const ParenPair& pair) {
  std::vector<int> profile;
  profile.reserve(s.size());
  int depth = 0;
  for (Symbol c : s) {
    if (c == pair.open) ++depth;
    else if (c == pair.close) --depth;
    profile.push_back(depth);
  }
  return profile;
}

int max_total_depth(const SymbolString& s, const LanguageSpec& spec) {
  int depth = 0, max_depth = 0;
  for (Symbol c : s) {
    depth += spec.require_index(c) < spec.pair_count() ? 1 : -1;
    max_depth = std::max(max_depth, depth);
  }
  return max_depth;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats stats;
  for (const auto& s : corpus.strings) {
    ++stats.length_histogram[static_cast<int>(s.size())];
    ++stats.max_depth_histogram[max_total_depth(s, corpus.spec)];
  }
  return stats;
}

}  // namespace dycklab

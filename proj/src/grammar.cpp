#include "dycklab/grammar.hpp"

#include <stdexcept>

namespace dycklab {

void GrammarParams::validate() const {
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0) || !(p + q < 1.0))
    throw std::invalid_argument("grammar params require 0<p<1, 0<q<1, p+q<1");
}

std::string split_name(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::short_test: return "short_test";
    case Split::long_test: return "long_test";
  }
  throw std::invalid_argument("unknown split");
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "short_test") return Split::short_test;
  if (name == "long_test") return Split::long_test;
  throw DataError("unknown split name: " + name);
}

std::optional<SymbolString> sample_grammar(const LanguageSpec& spec,
                                           const GrammarParams& params, Rng& rng,
                                           size_t length_cap) {
  params.validate();
  const int k = spec.pair_count();

  // Leftmost expansion with an explicit work stack; entries are either a
  // terminal to emit or a nonterminal S.
  struct Item {
    bool terminal;
    Symbol symbol;
  };
  std::vector<Item> stack;
  stack.push_back({false, 0});
  SymbolString out;
  size_t expansions = 0;
  const size_t expansion_cap = 64 * length_cap;

  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (item.terminal) {
      out.push_back(item.symbol);
      if (out.size() > length_cap) return std::nullopt;
      continue;
    }
    if (++expansions > expansion_cap) return std::nullopt;
    double u = rng.next_unit();
    if (u < params.p) {
      // the bracketing probability p splits evenly across the k pairs
      size_t pair_idx = k == 1 ? 0 : rng.next_below(static_cast<uint64_t>(k));
      const auto& pair = spec.pairs()[pair_idx];
      stack.push_back({true, pair.close});
      stack.push_back({false, 0});
      stack.push_back({true, pair.open});
    } else if (u < params.p + params.q) {
      stack.push_back({false, 0});
      stack.push_back({false, 0});
    }
    // else ε: emit nothing
  }
  return out;
}

Corpus build_corpus(const LanguageSpec& spec, const GrammarParams& params,
                    LengthWindow window, size_t count,
                    const std::unordered_set<SymbolString>& exclusion,
                    uint64_t seed, Split split, const BuildOptions& options) {
  params.validate();
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (window.min < 2) throw std::invalid_argument("window min must be >= 2");
  if (window.max < window.min) throw std::invalid_argument("window max < min");

  Corpus corpus{spec, split, {}, {seed, window, count, params}};
  corpus.strings.reserve(count);
  std::unordered_set<SymbolString> seen;
  seen.reserve(count * 2);

  const size_t budget = options.draws_per_string * count;
  size_t draws = 0;
  for (size_t i = 0; i < count; ++i) {
    Rng rng(derive_stream(seed, i));
    for (;;) {
      if (draws >= budget)
        throw CorpusError("corpus generation exhausted its draw budget (" +
                          std::to_string(budget) + " draws): only " +
                          std::to_string(corpus.strings.size()) + " of " +
                          std::to_string(count) + " distinct strings available");
      ++draws;
      auto sample = sample_grammar(spec, params, rng, options.length_cap);
      if (!sample) continue;  // runaway derivation: resample
      if (!window.contains(sample->size())) continue;
      if (seen.count(*sample) || exclusion.count(*sample)) continue;
      seen.insert(*sample);
      corpus.strings.push_back(std::move(*sample));
      break;
    }
  }
  return corpus;
}

SplitPlan default_split_plan(Task task) {
  SplitPlan plan;
  if (task == Task::shuffle6) plan.sizes.train = 30000;
  return plan;
}

TaskSplits build_task_splits(Task task, uint64_t seed) {
  return build_task_splits(task, seed, default_split_plan(task));
}

TaskSplits build_task_splits(Task task, uint64_t seed, const SplitPlan& plan) {
  const LanguageSpec spec = spec_for_task(task);
  const std::unordered_set<SymbolString> empty;

  Corpus train = build_corpus(spec, plan.grammar, plan.train_window, plan.sizes.train,
                              empty, derive_stream(seed, 1), Split::train, plan.options);

  std::unordered_set<SymbolString> exclusion(train.strings.begin(), train.strings.end());
  Corpus short_test =
      build_corpus(spec, plan.grammar, plan.train_window, plan.sizes.short_test,
                   exclusion, derive_stream(seed, 2), Split::short_test, plan.options);

  for (const auto& s : short_test.strings) exclusion.insert(s);
  Corpus long_test =
      build_corpus(spec, plan.grammar, plan.long_window, plan.sizes.long_test,
                   exclusion, derive_stream(seed, 3), Split::long_test, plan.options);

  return {std::move(train), std::move(short_test), std::move(long_test)};
}

}  // namespace dycklab

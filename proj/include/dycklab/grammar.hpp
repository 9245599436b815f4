#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "dycklab/language.hpp"
#include "dycklab/rng.hpp"

namespace dycklab {

// Branch probabilities of the bracketing grammar
//   S -> o_i S c_i  (probability p, split evenly over the k pairs)
//   S -> S S        (probability q)
//   S -> ε          (probability 1 - p - q)
struct GrammarParams {
  double p = 0.5;
  double q = 0.25;
  void validate() const;  // throws std::invalid_argument
};

struct LengthWindow {
  int min = 2;
  int max = 50;
  bool contains(size_t n) const {
    return n >= static_cast<size_t>(min) && n <= static_cast<size_t>(max);
  }
};

struct Manifest {
  uint64_t seed = 0;
  LengthWindow window;
  size_t requested_count = 0;
  GrammarParams grammar;
};

enum class Split { train, short_test, long_test };
std::string split_name(Split split);
Split split_from_name(const std::string& name);  // throws DataError

struct Corpus {
  LanguageSpec spec;
  Split split = Split::train;
  std::vector<SymbolString> strings;
  Manifest manifest;
};

// One expansion of S under the bracketing grammar for spec's pairs (Shuffle
// specs sample from the Dyck grammar over the same pairs; the labels differ,
// generation does not). Returns nullopt when the derivation exceeds the
// length cap: the caller resamples.
std::optional<SymbolString> sample_grammar(const LanguageSpec& spec,
                                           const GrammarParams& params, Rng& rng,
                                           size_t length_cap = 10000);

struct BuildOptions {
  size_t draws_per_string = 1000;  // total draw budget = draws_per_string * count
  size_t length_cap = 10000;
};

// `count` distinct in-window members, none in `exclusion`. Sample i draws
// from child stream derive_stream(seed, i), so a rejected draw never shifts
// the later samples. Throws CorpusError when the draw budget runs out.
Corpus build_corpus(const LanguageSpec& spec, const GrammarParams& params,
                    LengthWindow window, size_t count,
                    const std::unordered_set<SymbolString>& exclusion,
                    uint64_t seed, Split split = Split::train,
                    const BuildOptions& options = {});

struct SplitSizes {
  size_t train = 10000;
  size_t short_test = 5000;
  size_t long_test = 5000;
};

struct SplitPlan {
  SplitSizes sizes;
  LengthWindow train_window{2, 50};
  LengthWindow long_window{52, 100};
  GrammarParams grammar;
  BuildOptions options;
};

struct TaskSplits {
  Corpus train;
  Corpus short_test;
  Corpus long_test;
};

// Standard sizes: 10,000 training strings (30,000 for shuffle6) and 5,000 per
// test set; train/short lengths in [2,50], long in [52,100]. The short test
// set excludes the training strings; the long window is disjoint by itself.
SplitPlan default_split_plan(Task task);
TaskSplits build_task_splits(Task task, uint64_t seed);
TaskSplits build_task_splits(Task task, uint64_t seed, const SplitPlan& plan);

}  // namespace dycklab

#include "dycklab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "dycklab/encoding.hpp"
#include "dycklab/rng.hpp"

namespace dycklab {

std::string objective_name(Objective objective) {
  return objective == Objective::next_symbols ? "next_symbols" : "last_closing";
}

Objective objective_from_name(const std::string& name) {
  if (name == "next_symbols") return Objective::next_symbols;
  if (name == "last_closing") return Objective::last_closing;
  throw DataError("unknown objective: " + name);
}

ClassifyResult classify_sequence(const NetParams& params, const LanguageSpec& spec,
                                 const SymbolString& s, double threshold) {
  if (params.input_dim != spec.dimension())
    throw DataError("network dimension " + std::to_string(params.input_dim) +
                    " does not match the " + spec.name() + " alphabet");
  const auto targets = target_sequence(spec, s);

  std::vector<Vec> inputs;
  inputs.reserve(s.size());
  for (Symbol c : s) inputs.push_back(encode_one_hot(c, spec));
  const auto outputs = forward(params, inputs).outputs;

  ClassifyResult result;
  result.accepted = true;
  result.correct.resize(s.size());
  result.margin_low = 0.0;
  result.margin_high = 1.0;
  for (size_t t = 0; t < s.size(); ++t) {
    SymbolSet predicted = decode_prediction(outputs[t], threshold, spec);
    result.correct[t] = predicted == targets[t];
    if (!result.correct[t]) result.accepted = false;
    for (int d = 0; d < spec.dimension(); ++d) {
      if (targets[t].contains(d))
        result.margin_high = std::min(result.margin_high, outputs[t][d]);
      else
        result.margin_low = std::max(result.margin_low, outputs[t][d]);
    }
  }
  return result;
}

double evaluate(const NetParams& params, const Corpus& corpus) {
  if (corpus.strings.empty()) return 0.0;
  size_t accepted = 0;
  for (const auto& s : corpus.strings)
    if (classify_sequence(params, corpus.spec, s).accepted) ++accepted;
  return 100.0 * static_cast<double>(accepted) / static_cast<double>(corpus.strings.size());
}

bool classify_last_closing(const NetParams& params, const LanguageSpec& spec,
                           const SymbolString& s) {
  if (s.size() < 2) throw DataError("last-closing needs members of length >= 2");
  const int k = spec.pair_count();
  const int true_pair = spec.pair_of(s.back());

  std::vector<Vec> inputs;
  inputs.reserve(s.size() - 1);
  for (size_t t = 0; t + 1 < s.size(); ++t) inputs.push_back(encode_one_hot(s[t], spec));
  const auto outputs = forward(params, inputs).outputs;
  const Vec& last = outputs.back();

  int best_pair = 0;
  for (int pair = 1; pair < k; ++pair)
    if (last[k + pair] > last[k + best_pair]) best_pair = pair;
  return best_pair == true_pair;
}

double evaluate_last_closing(const NetParams& params, const Corpus& corpus) {
  if (corpus.strings.empty()) return 0.0;
  size_t hits = 0;
  for (const auto& s : corpus.strings)
    if (classify_last_closing(params, corpus.spec, s)) ++hits;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(corpus.strings.size());
}

namespace {

// Cached supervision for one training sequence.
struct Example {
  std::vector<Vec> inputs;
  std::vector<Vec> targets;
  std::vector<double> step_weights;
};

Example make_example(const LanguageSpec& spec, const SymbolString& s, Objective objective) {
  Example ex;
  if (objective == Objective::next_symbols) {
    ex.inputs.reserve(s.size());
    for (Symbol c : s) ex.inputs.push_back(encode_one_hot(c, spec));
    for (const auto& target : target_sequence(spec, s))
      ex.targets.push_back(k_hot(target, spec));
    ex.step_weights.assign(s.size(), 1.0);
  } else {
    const size_t n = s.size() - 1;
    ex.inputs.reserve(n);
    for (size_t t = 0; t < n; ++t) ex.inputs.push_back(encode_one_hot(s[t], spec));
    ex.targets.assign(n, Vec(spec.dimension(), 0.0));
    ex.targets.back() = encode_one_hot(s.back(), spec);
    ex.step_weights.assign(n, 0.0);
    ex.step_weights.back() = 1.0;
  }
  return ex;
}

double train_accuracy(const NetParams& params, const Corpus& corpus, Objective objective) {
  return objective == Objective::next_symbols ? evaluate(params, corpus)
                                              : evaluate_last_closing(params, corpus);
}

}  // namespace

TrainResult train(const TrainConfig& config, const TaskSplits& splits) {
  const LanguageSpec spec = spec_for_task(config.task);
  const int hidden = config.effective_hidden();

  TrainResult result;
  result.report.trial_seed = config.seed;

  NetParams params =
      init_params(config.arch, spec.dimension(), hidden, derive_stream(config.seed, 0));
  AdamState opt = make_adam_state(params);

  const auto& corpus = splits.train;
  std::vector<Example> examples;
  examples.reserve(corpus.strings.size());
  for (const auto& s : corpus.strings)
    examples.push_back(make_example(spec, s, config.objective));

  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);

  NetParams best = params;
  double best_accuracy = -1.0;
  int best_epoch = 0;

  try {
    for (int epoch = 1; epoch <= config.epochs_max; ++epoch) {
      Rng shuffle_rng(derive_stream(config.seed, 0x10000u + static_cast<uint64_t>(epoch)));
      shuffle_rng.shuffle(order);

      double loss_sum = 0.0;
      for (size_t idx : order) {
        const Example& ex = examples[idx];
        BackwardResult back =
            backward_masked(params, ex.inputs, ex.targets, ex.step_weights);
        adam_update(params, back.grads, opt, config.adam);
        loss_sum += back.loss;
      }
      const double mean_loss =
          examples.empty() ? 0.0 : loss_sum / static_cast<double>(examples.size());
      if (!std::isfinite(mean_loss)) throw NumericalError("non-finite epoch loss");

      const double accuracy = train_accuracy(params, corpus, config.objective);
      result.report.epochs_run = epoch;
      result.report.final_loss = mean_loss;
      if (config.record_history)
        result.report.history.push_back({epoch, mean_loss, accuracy});

      if (accuracy >= best_accuracy) {  // ties go to the later epoch
        best_accuracy = accuracy;
        best = params;
        best_epoch = epoch;
      }
      if (config.early_stop && accuracy == 100.0) break;
    }
  } catch (const NumericalError& err) {
    result.report.failed = true;
    result.report.failure = err.what();
    result.params = std::move(params);
    return result;
  }

  result.report.best_epoch = best_epoch;
  result.report.train_accuracy = train_accuracy(best, splits.train, config.objective);
  result.report.short_accuracy = train_accuracy(best, splits.short_test, config.objective);
  result.report.long_accuracy = train_accuracy(best, splits.long_test, config.objective);
  result.params = std::move(best);
  return result;
}

uint64_t trial_seed(uint64_t master_seed, int trial_index) {
  return derive_stream(master_seed, 0x7000u + static_cast<uint64_t>(trial_index));
}

std::vector<TrialOutcome> run_trials(const TrainConfig& config, const TaskSplits& splits) {
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(config.trial_count);
  for (int i = 0; i < config.trial_count; ++i) {
    TrainConfig trial_config = config;
    trial_config.seed = trial_seed(config.seed, i);
    TrainResult trained = train(trial_config, splits);
    trained.report.trial_index = i;
    outcomes.push_back({std::move(trained.report), std::move(trained.params)});
  }
  return outcomes;
}

namespace {

SplitSummary order_stats(std::vector<double> values) {
  SplitSummary summary;
  if (values.empty()) return summary;
  std::sort(values.begin(), values.end());
  summary.min = values.front();
  summary.max = values.back();
  const size_t n = values.size();
  summary.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return summary;
}

}  // namespace

ExperimentSummary summarize(std::vector<TrialReport> reports) {
  ExperimentSummary summary;
  std::vector<double> train, short_test, long_test;
  for (const auto& report : reports) {
    if (report.failed) {
      ++summary.failed_trials;
      std::cerr << "warning: trial " << report.trial_index
                << " failed and is excluded from aggregation: " << report.failure
                << "\n";
      continue;
    }
    train.push_back(report.train_accuracy);
    short_test.push_back(report.short_accuracy);
    long_test.push_back(report.long_accuracy);
  }
  summary.train = order_stats(std::move(train));
  summary.short_test = order_stats(std::move(short_test));
  summary.long_test = order_stats(std::move(long_test));
  summary.reports = std::move(reports);
  return summary;
}

ExperimentSummary run_experiment(const TrainConfig& config, const TaskSplits& splits) {
  auto outcomes = run_trials(config, splits);
  std::vector<TrialReport> reports;
  reports.reserve(outcomes.size());
  for (auto& outcome : outcomes) reports.push_back(std::move(outcome.report));
  return summarize(std::move(reports));
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_correlation needs two equal series, length >= 2");
  const double n = static_cast<double>(a.size());
  double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - mean_a) * (b[i] - mean_b);
    var_a += (a[i] - mean_a) * (a[i] - mean_a);
    var_b += (b[i] - mean_b) * (b[i] - mean_b);
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

SymbolString dyck1_probe() { return U"((()))(((())))(())()"; }
SymbolString shuffle2_probe() { return U"((([[[)))]]]()[]"; }

SingleUnitResult single_unit_experiment(Task task, int trial_count, uint64_t seed,
                                        const TaskSplits& splits, int epochs_max) {
  int hidden;
  SymbolString probe;
  if (task == Task::dyck1) {
    hidden = 1;
    probe = dyck1_probe();
  } else if (task == Task::shuffle2) {
    hidden = 2;
    probe = shuffle2_probe();
  } else {
    throw std::invalid_argument("single-unit runs cover dyck1 and shuffle2 only");
  }

  TrainConfig config;
  config.task = task;
  config.arch = Architecture::lstm;
  config.hidden = hidden;
  config.trial_count = trial_count;
  config.seed = seed;
  config.epochs_max = epochs_max;

  auto outcomes = run_trials(config, splits);

  // median trial by short-test accuracy
  std::vector<size_t> ok;
  for (size_t i = 0; i < outcomes.size(); ++i)
    if (!outcomes[i].report.failed) ok.push_back(i);
  if (ok.empty()) throw NumericalError("all single-unit trials diverged");
  std::sort(ok.begin(), ok.end(), [&](size_t a, size_t b) {
    return outcomes[a].report.short_accuracy < outcomes[b].report.short_accuracy;
  });
  const NetParams& median_params = outcomes[ok[ok.size() / 2]].params;

  const LanguageSpec spec = spec_for_task(task);
  std::vector<Vec> inputs;
  for (Symbol c : probe) inputs.push_back(encode_one_hot(c, spec));
  NetTrace trace = forward(median_params, inputs).trace;

  double best_corr = 0.0;
  for (int unit = 0; unit < hidden; ++unit) {
    std::vector<double> cell;
    for (const auto& c : trace.cell) cell.push_back(c[unit]);
    for (const auto& pair : spec.pairs()) {
      auto depths = depth_profile(probe, pair);
      std::vector<double> depth(depths.begin(), depths.end());
      best_corr = std::max(best_corr,
                           std::abs(pearson_correlation(cell, depth)));
    }
  }

  std::vector<TrialReport> reports;
  for (auto& outcome : outcomes) reports.push_back(std::move(outcome.report));
  return {summarize(std::move(reports)), std::move(probe), std::move(trace), best_corr};
}

ExperimentSummary last_closing_task(const TaskSplits& splits, int trial_count,
                                    uint64_t seed, int epochs_max) {
  TrainConfig config;
  config.task = Task::dyck2;
  config.arch = Architecture::lstm;
  config.hidden = 4;
  config.objective = Objective::last_closing;
  config.trial_count = trial_count;
  config.seed = seed;
  config.epochs_max = epochs_max;
  return run_experiment(config, splits);
}

}  // namespace dycklab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dycklab/grammar.hpp"
#include "dycklab/language.hpp"
#include "dycklab/net.hpp"
#include "dycklab/oracle.hpp"

namespace dycklab {

// What the readout is supervised on: the next-symbol set at every timestep,
// or (last_closing) the identity of the final closing bracket only.
enum class Objective { next_symbols, last_closing };

std::string objective_name(Objective objective);
Objective objective_from_name(const std::string& name);

struct TrainConfig {
  Task task = Task::dyck1;
  Architecture arch = Architecture::lstm;
  int hidden = 0;  // 0 = the task's standard hidden size
  int epochs_max = 100;
  bool early_stop = true;  // stop once training accuracy hits 100%
  uint64_t seed = 1;
  int trial_count = 10;
  AdamConfig adam;
  Objective objective = Objective::next_symbols;
  bool record_history = true;

  int effective_hidden() const { return hidden > 0 ? hidden : default_hidden_units(task); }
};

struct ClassifyResult {
  bool accepted = false;
  std::vector<uint8_t> correct;  // per timestep
  // Thresholds in [margin_low, margin_high) leave the decision unchanged.
  double margin_low = 0.0;
  double margin_high = 1.0;
};

// Forward the one-hot sequence and require the thresholded prediction set to
// equal the oracle target set at every timestep.
ClassifyResult classify_sequence(const NetParams& params, const LanguageSpec& spec,
                                 const SymbolString& s, double threshold = 0.5);

// Percent of corpus sequences accepted.
double evaluate(const NetParams& params, const Corpus& corpus);

// Last-closing variant: feed s without its final symbol, compare the argmax
// over the closing outputs at the last step against the true final symbol.
bool classify_last_closing(const NetParams& params, const LanguageSpec& spec,
                           const SymbolString& s);
double evaluate_last_closing(const NetParams& params, const Corpus& corpus);

struct EpochRecord {
  int epoch = 0;
  double mean_loss = 0.0;
  double train_accuracy = 0.0;
};

struct TrialReport {
  int trial_index = 0;
  uint64_t trial_seed = 0;
  int epochs_run = 0;
  int best_epoch = 0;
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  double short_accuracy = 0.0;
  double long_accuracy = 0.0;
  bool failed = false;
  std::string failure;
  std::vector<EpochRecord> history;
};

struct TrainResult {
  NetParams params;  // best-epoch checkpoint (ties resolved to the later epoch)
  TrialReport report;
};

// One trial: per-sequence Adam updates on full-sequence MSE, training corpus
// reshuffled each epoch from the trial seed. Divergence marks the trial
// failed instead of raising.
TrainResult train(const TrainConfig& config, const TaskSplits& splits);

struct SplitSummary {
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

struct ExperimentSummary {
  SplitSummary train;
  SplitSummary short_test;
  SplitSummary long_test;
  std::vector<TrialReport> reports;
  int failed_trials = 0;
};

struct TrialOutcome {
  TrialReport report;
  NetParams params;
};

uint64_t trial_seed(uint64_t master_seed, int trial_index);

// trial_count independent trials; trial i of every architecture shares the
// same derived seed, so model families are comparable run-for-run.
std::vector<TrialOutcome> run_trials(const TrainConfig& config, const TaskSplits& splits);
ExperimentSummary summarize(std::vector<TrialReport> reports);
ExperimentSummary run_experiment(const TrainConfig& config, const TaskSplits& splits);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

// Fixed member words with varied depth, used for trace plots.
SymbolString dyck1_probe();
SymbolString shuffle2_probe();

struct SingleUnitResult {
  ExperimentSummary summary;
  SymbolString probe;
  NetTrace probe_trace;       // median-by-short-accuracy trial on the probe
  double depth_correlation;   // best |pearson| between a cell unit and a pair depth
};

// The minimal-width LSTM runs: one hidden unit on dyck1, two on shuffle2.
SingleUnitResult single_unit_experiment(Task task, int trial_count, uint64_t seed,
                                        const TaskSplits& splits, int epochs_max = 100);

// LSTM with four hidden units trained to name the final closing bracket.
ExperimentSummary last_closing_task(const TaskSplits& splits, int trial_count,
                                    uint64_t seed, int epochs_max = 20);

}  // namespace dycklab

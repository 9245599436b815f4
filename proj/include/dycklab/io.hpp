#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dycklab/grammar.hpp"
#include "dycklab/harness.hpp"
#include "dycklab/net.hpp"
#include "dycklab/oracle.hpp"
#include "dycklab/text.hpp"

namespace dycklab {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// --- corpus directory: one JSONL file per split plus manifest.json ---

struct StoredSplits {
  Task task = Task::dyck1;
  uint64_t seed = 0;
  SymbolEncoding encoding = SymbolEncoding::unicode;
  GrammarParams grammar;
  TaskSplits splits;
};

void save_splits(const std::filesystem::path& dir, const StoredSplits& stored);
StoredSplits load_splits(const std::filesystem::path& dir);

// --- checkpoints ---

struct CheckpointMeta {
  Task task = Task::dyck1;
  uint64_t seed = 0;
  int epoch = 0;
  Objective objective = Objective::next_symbols;
};

void save_checkpoint(const std::filesystem::path& path, const NetParams& params,
                     const CheckpointMeta& meta);
std::pair<NetParams, CheckpointMeta> load_checkpoint(const std::filesystem::path& path);

// --- reports ---

std::string experiment_report_json(const ExperimentSummary& summary,
                                   const TrainConfig& config);
// task,model,split,min,max,median rows (header included)
std::string summary_table_csv(const ExperimentSummary& summary, const TrainConfig& config);

// --- traces ---

struct TraceRow {
  int t = 0;
  Symbol input = 0;
  int target_code = 0;
  int predicted_code = 0;
  bool correct = false;
  Vec hidden;
  Vec cell;                 // empty unless LSTM
  std::vector<int> depths;  // one per pair
};

std::vector<TraceRow> record_trace(const NetParams& params, const LanguageSpec& spec,
                                   const SymbolString& s);
std::string trace_csv(const std::vector<TraceRow>& rows, const LanguageSpec& spec,
                      SymbolEncoding encoding);

// --- histograms ---

std::string histogram_csv(const std::map<int, size_t>& histogram);

}  // namespace dycklab

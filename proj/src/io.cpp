#include "dycklab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dycklab/encoding.hpp"

namespace dycklab {

using nlohmann::json;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

json window_json(const LengthWindow& w) { return json::array({w.min, w.max}); }

LengthWindow window_from_json(const json& j) {
  return LengthWindow{j.at(0).get<int>(), j.at(1).get<int>()};
}

json corpus_split_json(const Corpus& corpus, const std::string& file) {
  return json{{"file", file},
              {"split", split_name(corpus.split)},
              {"requested_count", corpus.manifest.requested_count},
              {"count", corpus.strings.size()},
              {"window", window_json(corpus.manifest.window)},
              {"seed", corpus.manifest.seed}};
}

std::string split_file(Split split) { return split_name(split) + ".jsonl"; }

void save_corpus_jsonl(const std::filesystem::path& path, const Corpus& corpus,
                       SymbolEncoding encoding) {
  std::string out;
  for (const auto& s : corpus.strings) {
    json line{{"s", render_symbols(s, encoding)}};
    out += line.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

std::vector<SymbolString> load_corpus_jsonl(const std::filesystem::path& path,
                                            SymbolEncoding encoding) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  std::vector<SymbolString> strings;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("s"))
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": expected a {\"s\": ...} object");
    strings.push_back(parse_symbols(j.at("s").get<std::string>(), encoding));
  }
  return strings;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << content;
}

void save_splits(const std::filesystem::path& dir, const StoredSplits& stored) {
  std::filesystem::create_directories(dir);
  const LanguageSpec spec = spec_for_task(stored.task);

  json alphabet = json::array();
  for (Symbol s : spec.alphabet())
    alphabet.push_back(render_symbol(s, stored.encoding));

  json manifest{{"format", "dycklab-corpus-v1"},
                {"task", task_name(stored.task)},
                {"kind", spec.kind() == Kind::dyck ? "dyck" : "shuffle"},
                {"pairs", spec.pair_count()},
                {"alphabet", alphabet},
                {"symbol_encoding", encoding_name(stored.encoding)},
                {"grammar", {{"p", stored.grammar.p}, {"q", stored.grammar.q}}},
                {"seed", stored.seed}};

  json splits = json::object();
  for (const Corpus* corpus :
       {&stored.splits.train, &stored.splits.short_test, &stored.splits.long_test}) {
    const std::string file = split_file(corpus->split);
    splits[split_name(corpus->split)] = corpus_split_json(*corpus, file);
    save_corpus_jsonl(dir / file, *corpus, stored.encoding);
  }
  manifest["splits"] = splits;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

StoredSplits load_splits(const std::filesystem::path& dir) {
  json manifest = json::parse(read_text_file(dir / "manifest.json"));
  StoredSplits stored;
  stored.task = task_from_name(manifest.at("task").get<std::string>());
  stored.seed = manifest.at("seed").get<uint64_t>();
  stored.encoding = encoding_from_name(manifest.at("symbol_encoding").get<std::string>());
  stored.grammar.p = manifest.at("grammar").at("p").get<double>();
  stored.grammar.q = manifest.at("grammar").at("q").get<double>();

  const LanguageSpec spec = spec_for_task(stored.task);
  auto load_one = [&](Split split) {
    const json& entry = manifest.at("splits").at(split_name(split));
    Corpus corpus{spec, split, {}, {}};
    corpus.manifest.seed = entry.at("seed").get<uint64_t>();
    corpus.manifest.window = window_from_json(entry.at("window"));
    corpus.manifest.requested_count = entry.at("requested_count").get<size_t>();
    corpus.manifest.grammar = stored.grammar;
    corpus.strings = load_corpus_jsonl(dir / entry.at("file").get<std::string>(),
                                       stored.encoding);
    for (const auto& s : corpus.strings)
      for (Symbol c : s) spec.require_index(c);
    return corpus;
  };
  stored.splits.train = load_one(Split::train);
  stored.splits.short_test = load_one(Split::short_test);
  stored.splits.long_test = load_one(Split::long_test);
  return stored;
}

void save_checkpoint(const std::filesystem::path& path, const NetParams& params,
                     const CheckpointMeta& meta) {
  json blocks = json::object();
  const auto& names = gate_names(params.arch);
  for (size_t g = 0; g < params.t.blocks.size(); ++g) {
    const GateBlock& block = params.t.blocks[g];
    blocks[names[g]] = json{{"w_ih", block.w_ih.a},
                            {"b_ih", block.b_ih},
                            {"w_hh", block.w_hh.a},
                            {"b_hh", block.b_hh}};
  }
  json j{{"format", "dycklab-checkpoint-v1"},
         {"architecture", architecture_name(params.arch)},
         {"task", task_name(meta.task)},
         {"objective", objective_name(meta.objective)},
         {"input_dim", params.input_dim},
         {"hidden", params.hidden},
         {"seed", meta.seed},
         {"epoch", meta.epoch},
         {"blocks", blocks},
         {"readout", params.t.readout.a},
         {"readout_bias", params.t.readout_bias}};
  write_text_file(path, j.dump(2) + "\n");
}

std::pair<NetParams, CheckpointMeta> load_checkpoint(const std::filesystem::path& path) {
  json j = json::parse(read_text_file(path));
  if (j.value("format", "") != "dycklab-checkpoint-v1")
    throw DataError(path.string() + ": not a dycklab checkpoint");

  NetParams params;
  params.arch = architecture_from_name(j.at("architecture").get<std::string>());
  params.input_dim = j.at("input_dim").get<int>();
  params.hidden = j.at("hidden").get<int>();

  CheckpointMeta meta;
  meta.task = task_from_name(j.at("task").get<std::string>());
  meta.seed = j.at("seed").get<uint64_t>();
  meta.epoch = j.at("epoch").get<int>();
  meta.objective = objective_from_name(j.value("objective", "next_symbols"));

  const int D = params.input_dim;
  const int H = params.hidden;
  if (spec_for_task(meta.task).dimension() != D)
    throw DataError(path.string() + ": input_dim does not match the task alphabet");

  auto load_vec = [&](const json& arr, size_t expected, const std::string& what) {
    auto v = arr.get<std::vector<double>>();
    if (v.size() != expected)
      throw DataError(path.string() + ": " + what + " has " + std::to_string(v.size()) +
                      " entries, expected " + std::to_string(expected));
    return v;
  };

  for (const auto& name : gate_names(params.arch)) {
    const json& b = j.at("blocks").at(name);
    GateBlock block;
    block.w_ih = Mat(H, D);
    block.w_ih.a = load_vec(b.at("w_ih"), static_cast<size_t>(H) * D, name + ".w_ih");
    block.b_ih = load_vec(b.at("b_ih"), static_cast<size_t>(H), name + ".b_ih");
    block.w_hh = Mat(H, H);
    block.w_hh.a = load_vec(b.at("w_hh"), static_cast<size_t>(H) * H, name + ".w_hh");
    block.b_hh = load_vec(b.at("b_hh"), static_cast<size_t>(H), name + ".b_hh");
    params.t.blocks.push_back(std::move(block));
  }
  params.t.readout = Mat(D, H);
  params.t.readout.a = load_vec(j.at("readout"), static_cast<size_t>(D) * H, "readout");
  params.t.readout_bias =
      load_vec(j.at("readout_bias"), static_cast<size_t>(D), "readout_bias");
  return {std::move(params), meta};
}

namespace {

json split_summary_json(const SplitSummary& s) {
  return json{{"min", round2(s.min)}, {"max", round2(s.max)}, {"median", round2(s.median)}};
}

json trial_report_json(const TrialReport& r) {
  json j{{"trial_index", r.trial_index},
         {"trial_seed", r.trial_seed},
         {"epochs_run", r.epochs_run},
         {"best_epoch", r.best_epoch},
         {"final_loss", r.final_loss},
         {"train_accuracy", round2(r.train_accuracy)},
         {"short_accuracy", round2(r.short_accuracy)},
         {"long_accuracy", round2(r.long_accuracy)},
         {"failed", r.failed}};
  if (r.failed) j["failure"] = r.failure;
  json history = json::array();
  for (const auto& e : r.history)
    history.push_back(json{{"epoch", e.epoch},
                           {"loss", e.mean_loss},
                           {"train_accuracy", round2(e.train_accuracy)}});
  j["history"] = history;
  return j;
}

}  // namespace

std::string experiment_report_json(const ExperimentSummary& summary,
                                   const TrainConfig& config) {
  json trials = json::array();
  for (const auto& report : summary.reports) trials.push_back(trial_report_json(report));
  json j{{"format", "dycklab-report-v1"},
         {"task", task_name(config.task)},
         {"architecture", architecture_name(config.arch)},
         {"hidden", config.effective_hidden()},
         {"objective", objective_name(config.objective)},
         {"seed", config.seed},
         {"trial_count", config.trial_count},
         {"epochs_max", config.epochs_max},
         {"failed_trials", summary.failed_trials},
         {"summary",
          {{"train", split_summary_json(summary.train)},
           {"short_test", split_summary_json(summary.short_test)},
           {"long_test", split_summary_json(summary.long_test)}}},
         {"trials", trials}};
  return j.dump(2) + "\n";
}

namespace {

std::string format2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string summary_table_csv(const ExperimentSummary& summary, const TrainConfig& config) {
  std::string out = "task,model,split,min,max,median\n";
  const std::string prefix = task_name(config.task) + "," + architecture_name(config.arch) + ",";
  auto row = [&](const std::string& split, const SplitSummary& s) {
    out += prefix + split + "," + format2(s.min) + "," + format2(s.max) + "," +
           format2(s.median) + "\n";
  };
  row("train", summary.train);
  row("short_test", summary.short_test);
  row("long_test", summary.long_test);
  return out;
}

std::vector<TraceRow> record_trace(const NetParams& params, const LanguageSpec& spec,
                                   const SymbolString& s) {
  const auto targets = target_sequence(spec, s);
  std::vector<Vec> inputs;
  inputs.reserve(s.size());
  for (Symbol c : s) inputs.push_back(encode_one_hot(c, spec));
  const ForwardResult run = forward(params, inputs);

  std::vector<std::vector<int>> depths;
  for (const auto& pair : spec.pairs()) depths.push_back(depth_profile(s, pair));

  std::vector<TraceRow> rows;
  rows.reserve(s.size());
  for (size_t t = 0; t < s.size(); ++t) {
    TraceRow row;
    row.t = static_cast<int>(t);
    row.input = s[t];
    row.target_code = presentation_code(targets[t], spec);
    SymbolSet predicted = decode_prediction(run.outputs[t], 0.5, spec);
    row.predicted_code = presentation_code(predicted, spec);
    row.correct = predicted == targets[t];
    row.hidden = run.trace.hidden[t];
    if (!run.trace.cell.empty()) row.cell = run.trace.cell[t];
    for (const auto& d : depths) row.depths.push_back(d[t]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string trace_csv(const std::vector<TraceRow>& rows, const LanguageSpec& spec,
                      SymbolEncoding encoding) {
  const int hidden = rows.empty() ? 0 : static_cast<int>(rows.front().hidden.size());
  const bool has_cell = !rows.empty() && !rows.front().cell.empty();

  std::string out = "t,input,target_code,pred_code,correct";
  for (int i = 0; i < hidden; ++i) out += ",h_" + std::to_string(i);
  if (has_cell)
    for (int i = 0; i < hidden; ++i) out += ",c_" + std::to_string(i);
  for (int pair = 0; pair < spec.pair_count(); ++pair)
    out += ",depth_" + std::to_string(pair);
  out += "\n";

  std::ostringstream line;
  for (const auto& row : rows) {
    line.str("");
    line << row.t << ',' << render_symbol(row.input, encoding) << ',' << row.target_code
         << ',' << row.predicted_code << ',' << (row.correct ? 1 : 0);
    for (double h : row.hidden) line << ',' << h;
    if (has_cell)
      for (double c : row.cell) line << ',' << c;
    for (int d : row.depths) line << ',' << d;
    line << '\n';
    out += line.str();
  }
  return out;
}

std::string histogram_csv(const std::map<int, size_t>& histogram) {
  std::string out = "bin,count\n";
  for (const auto& [bin, count] : histogram)
    out += std::to_string(bin) + "," + std::to_string(count) + "\n";
  return out;
}

}  // namespace dycklab

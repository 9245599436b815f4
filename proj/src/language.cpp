#include "dycklab/language.hpp"

#include <algorithm>

namespace dycklab {

const std::vector<ParenPair>& bracket_inventory() {
  static const std::vector<ParenPair> inventory = {
      {U'(', U')', 0}, {U'[', U']', 1},      {U'{', U'}', 2},
      {U'⟨', U'⟩', 3},  // angle brackets
      {U'⌈', U'⌉', 4},  // ceiling brackets
      {U'⌊', U'⌋', 5},  // floor brackets
  };
  return inventory;
}

LanguageSpec::LanguageSpec(Kind kind, int k) : kind_(kind) {
  const auto& inventory = bracket_inventory();
  if (k < 1 || k > static_cast<int>(inventory.size()))
    throw std::invalid_argument("pair count must be in [1, " +
                                std::to_string(inventory.size()) + "]");
  pairs_.assign(inventory.begin(), inventory.begin() + k);
  alphabet_.reserve(2 * k);
  for (const auto& p : pairs_) alphabet_.push_back(p.open);
  for (const auto& p : pairs_) alphabet_.push_back(p.close);
}

LanguageSpec LanguageSpec::dyck(int k) { return LanguageSpec(Kind::dyck, k); }
LanguageSpec LanguageSpec::shuffle(int k) { return LanguageSpec(Kind::shuffle, k); }

std::optional<int> LanguageSpec::index_of(Symbol s) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), s);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<int>(it - alphabet_.begin());
}

int LanguageSpec::require_index(Symbol s) const {
  auto idx = index_of(s);
  if (!idx)
    throw ForeignSymbolError("symbol U+" + std::to_string(static_cast<uint32_t>(s)) +
                             " is not in the " + name() + " alphabet");
  return *idx;
}

bool LanguageSpec::is_opening(Symbol s) const {
  auto idx = index_of(s);
  return idx && *idx < pair_count();
}

bool LanguageSpec::is_closing(Symbol s) const {
  auto idx = index_of(s);
  return idx && *idx >= pair_count();
}

int LanguageSpec::pair_of(Symbol s) const {
  int idx = require_index(s);
  return idx < pair_count() ? idx : idx - pair_count();
}

std::string LanguageSpec::name() const {
  return (kind_ == Kind::dyck ? "dyck" : "shuffle") + std::to_string(pair_count());
}

LanguageSpec spec_for_task(Task task) {
  switch (task) {
    case Task::dyck1: return LanguageSpec::dyck(1);
    case Task::shuffle2: return LanguageSpec::shuffle(2);
    case Task::shuffle6: return LanguageSpec::shuffle(6);
    case Task::dyck2: return LanguageSpec::dyck(2);
  }
  throw std::invalid_argument("unknown task");
}

std::string task_name(Task task) {
  switch (task) {
    case Task::dyck1: return "dyck1";
    case Task::shuffle2: return "shuffle2";
    case Task::shuffle6: return "shuffle6";
    case Task::dyck2: return "dyck2";
  }
  throw std::invalid_argument("unknown task");
}

Task task_from_name(const std::string& name) {
  for (Task t : all_tasks())
    if (task_name(t) == name) return t;
  throw DataError("unknown task name: " + name);
}

const std::vector<Task>& all_tasks() {
  static const std::vector<Task> tasks = {Task::dyck1, Task::shuffle2,
                                          Task::shuffle6, Task::dyck2};
  return tasks;
}

int default_hidden_units(Task task) {
  switch (task) {
    case Task::dyck1: return 3;
    case Task::dyck2: return 4;
    case Task::shuffle2: return 4;
    case Task::shuffle6: return 8;
  }
  throw std::invalid_argument("unknown task");
}

}  // namespace dycklab

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dycklab {

// Symbols are Unicode code points; strings are sequences of them.
using Symbol = char32_t;
using SymbolString = std::u32string;

struct ForeignSymbolError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a prefix cannot be extended to any member of the language.
struct DeadPrefixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParenPair {
  Symbol open = 0;
  Symbol close = 0;
  int index = 0;  // position within the language's ordered pair list
};

// The fixed bracket inventory, in the order that defines presentation-code
// weights: ( ) [ ] { } U+27E8/9 angle, U+2308/9 ceiling, U+230A/B floor.
const std::vector<ParenPair>& bracket_inventory();

enum class Kind { dyck, shuffle };

// A language identity: Dyck-k or Shuffle-k over the first k inventory pairs.
// The alphabet is all openings in pair order followed by all closings in pair
// order; its positions define one-hot indices everywhere downstream.
class LanguageSpec {
 public:
  static LanguageSpec dyck(int k);
  static LanguageSpec shuffle(int k);

  Kind kind() const { return kind_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<ParenPair>& pairs() const { return pairs_; }
  const std::vector<Symbol>& alphabet() const { return alphabet_; }
  int dimension() const { return static_cast<int>(alphabet_.size()); }

  std::optional<int> index_of(Symbol s) const;
  int require_index(Symbol s) const;  // throws ForeignSymbolError
  bool is_opening(Symbol s) const;
  bool is_closing(Symbol s) const;
  // Pair index of a symbol; throws ForeignSymbolError for foreign symbols.
  int pair_of(Symbol s) const;

  std::string name() const;  // "dyck1", "shuffle6", ...

  bool operator==(const LanguageSpec& other) const {
    return kind_ == other.kind_ && pairs_.size() == other.pairs_.size();
  }

 private:
  LanguageSpec(Kind kind, int k);
  Kind kind_;
  std::vector<ParenPair> pairs_;
  std::vector<Symbol> alphabet_;
};

// The four experiment corpora.
enum class Task { dyck1, shuffle2, shuffle6, dyck2 };

LanguageSpec spec_for_task(Task task);
std::string task_name(Task task);
Task task_from_name(const std::string& name);  // throws DataError
const std::vector<Task>& all_tasks();

// Hidden sizes used by the standard experiments: 3, 4, 4, 8.
int default_hidden_units(Task task);

}  // namespace dycklab

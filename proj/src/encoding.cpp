#include "dycklab/encoding.hpp"

namespace dycklab {

std::vector<double> encode_one_hot(Symbol s, const LanguageSpec& spec) {
  std::vector<double> v(spec.dimension(), 0.0);
  v[spec.require_index(s)] = 1.0;
  return v;
}

SymbolSet decode_prediction(std::span<const double> values, double threshold,
                            const LanguageSpec& spec) {
  if (static_cast<int>(values.size()) != spec.dimension())
    throw DataError("prediction dimension " + std::to_string(values.size()) +
                    " does not match alphabet size " +
                    std::to_string(spec.dimension()));
  SymbolSet set;
  for (int i = 0; i < spec.dimension(); ++i)
    if (values[i] > threshold) set.add(i);
  return set;
}

std::vector<double> k_hot(const SymbolSet& target, const LanguageSpec& spec) {
  std::vector<double> v(spec.dimension(), 0.0);
  for (int i = 0; i < spec.dimension(); ++i)
    if (target.contains(i)) v[i] = 1.0;
  return v;
}

int presentation_code(const SymbolSet& target, const LanguageSpec& spec) {
  int code = 0;
  for (int pair = 0; pair < spec.pair_count(); ++pair)
    if (target.contains(spec.pair_count() + pair)) code |= 1 << pair;
  return code;
}

SymbolSet code_to_set(int code, const LanguageSpec& spec) {
  if (code < 0 || code >= 1 << spec.pair_count())
    throw DataError("presentation code " + std::to_string(code) +
                    " has bits beyond the " + spec.name() + " pairs");
  SymbolSet set = SymbolSet::openings(spec);
  for (int pair = 0; pair < spec.pair_count(); ++pair)
    if (code >> pair & 1) set.add(spec.pair_count() + pair);
  return set;
}

int reduction_bits(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  int m = 0;
  while ((1 << m) < n) ++m;
  return std::max(1, m);
}

SymbolString reduce_dyck_to_2(const SymbolString& s, int n) {
  const LanguageSpec source = LanguageSpec::dyck(n);
  const int m = reduction_bits(n);
  SymbolString out;
  out.reserve(s.size() * static_cast<size_t>(m));
  for (Symbol c : s) {
    int idx = source.require_index(c);
    bool opening = idx < n;
    int number = opening ? idx : idx - n;  // i - 1 for pair i
    for (int b = 0; b < m; ++b) {
      // openings emit most-significant bit first; closings reversed
      int bit = opening ? (number >> (m - 1 - b)) & 1 : (number >> b) & 1;
      if (opening)
        out.push_back(bit ? U'[' : U'(');
      else
        out.push_back(bit ? U']' : U')');
    }
  }
  return out;
}

}  // namespace dycklab

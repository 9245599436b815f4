#include "dycklab/shuffle.hpp"

namespace dycklab {
namespace {

void interleave(const SymbolString& u, size_t i, const SymbolString& v, size_t j,
                SymbolString& prefix, std::set<SymbolString>& out) {
  if (i == u.size() && j == v.size()) {
    out.insert(prefix);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    interleave(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    interleave(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::set<SymbolString> shuffle_strings(const SymbolString& u, const SymbolString& v) {
  if (u.size() + v.size() > 16)
    throw DataError("too long for enumeration: |u|+|v| = " +
                    std::to_string(u.size() + v.size()) + " > 16");
  std::set<SymbolString> out;
  SymbolString prefix;
  prefix.reserve(u.size() + v.size());
  interleave(u, 0, v, 0, prefix, out);
  return out;
}

}  // namespace dycklab

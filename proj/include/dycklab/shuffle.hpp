#pragma once

#include <set>

#include "dycklab/language.hpp"

namespace dycklab {

// All order-preserving interleavings of u and v, from the inductive rule
//   au || bv = a(u || bv) ∪ b(au || v),   u || ε = ε || u = {u}.
// Enumeration only; throws DataError when |u|+|v| > 16.
std::set<SymbolString> shuffle_strings(const SymbolString& u, const SymbolString& v);

}  // namespace dycklab

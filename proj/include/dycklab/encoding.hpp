#pragma once

#include <span>
#include <vector>

#include "dycklab/language.hpp"
#include "dycklab/oracle.hpp"

namespace dycklab {

std::vector<double> encode_one_hot(Symbol s, const LanguageSpec& spec);

// {alphabet[i] : values[i] > threshold}; exactly-at-threshold is not predicted.
SymbolSet decode_prediction(std::span<const double> values, double threshold,
                            const LanguageSpec& spec);

std::vector<double> k_hot(const SymbolSet& target, const LanguageSpec& spec);

// Compact integer form of a target set: each closing carries the power-of-two
// weight of its pair (pair 0 -> 1, pair 1 -> 2, ...); openings carry 0.
int presentation_code(const SymbolSet& target, const LanguageSpec& spec);

// Inverse on valid codes: the coded closings plus every opening.
SymbolSet code_to_set(int code, const LanguageSpec& spec);  // throws DataError

// Binary-encoding homomorphism from Dyck-n words onto Dyck-2 words: an
// opening of pair i maps to the m-bit binary of i-1 rendered with '(' for 0
// and '[' for 1; its closing maps to the reversed bits rendered with ')' and
// ']'; m = max(1, ceil(log2 n)). Membership is preserved in both directions.
SymbolString reduce_dyck_to_2(const SymbolString& s, int n);

int reduction_bits(int n);  // the m above

}  // namespace dycklab

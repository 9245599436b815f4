#pragma once

#include <string>
#include <string_view>

#include "dycklab/language.hpp"

namespace dycklab {

// Serialization of symbol strings. Unicode mode is plain UTF-8; ASCII mode
// replaces the non-ASCII brackets with the aliases
//   angle -> "<" ">",  ceiling -> "lc" "rc",  floor -> "lf" "rf".
enum class SymbolEncoding { unicode, ascii };

std::string encoding_name(SymbolEncoding enc);
SymbolEncoding encoding_from_name(const std::string& name);  // throws DataError

std::u32string utf8_decode(std::string_view text);  // throws DataError on malformed input
std::string utf8_encode(const std::u32string& text);

std::string render_symbol(Symbol s, SymbolEncoding enc);
std::string render_symbols(const SymbolString& s, SymbolEncoding enc);
SymbolString parse_symbols(std::string_view text, SymbolEncoding enc);

}  // namespace dycklab

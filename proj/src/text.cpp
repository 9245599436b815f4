#include "dycklab/text.hpp"

#include <array>

namespace dycklab {
namespace {

struct Alias {
  Symbol symbol;
  const char* ascii;
};

constexpr std::array<Alias, 6> kAliases = {{
    {U'⟨', "<"},
    {U'⟩', ">"},
    {U'⌈', "lc"},
    {U'⌉', "rc"},
    {U'⌊', "lf"},
    {U'⌋', "rf"},
}};

}  // namespace

std::string encoding_name(SymbolEncoding enc) {
  return enc == SymbolEncoding::unicode ? "unicode" : "ascii";
}

SymbolEncoding encoding_from_name(const std::string& name) {
  if (name == "unicode") return SymbolEncoding::unicode;
  if (name == "ascii") return SymbolEncoding::ascii;
  throw DataError("unknown symbol_encoding: " + name);
}

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  auto fail = [&] { throw DataError("malformed UTF-8 at byte " + std::to_string(i)); };
  while (i < text.size()) {
    unsigned char b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    size_t extra = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      fail();
    }
    for (size_t j = 1; j <= extra; ++j) {
      if (i + j >= text.size()) fail();
      unsigned char b = static_cast<unsigned char>(text[i + j]);
      if ((b & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string utf8_encode(const std::u32string& text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::string render_symbol(Symbol s, SymbolEncoding enc) {
  if (enc == SymbolEncoding::ascii) {
    for (const auto& alias : kAliases)
      if (alias.symbol == s) return alias.ascii;
  }
  return utf8_encode(std::u32string(1, s));
}

std::string render_symbols(const SymbolString& s, SymbolEncoding enc) {
  if (enc == SymbolEncoding::unicode) return utf8_encode(s);
  std::string out;
  out.reserve(s.size());
  for (Symbol c : s) out += render_symbol(c, enc);
  return out;
}

SymbolString parse_symbols(std::string_view text, SymbolEncoding enc) {
  if (enc == SymbolEncoding::unicode) return utf8_decode(text);
  SymbolString out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    // two-character aliases first: lc, rc, lf, rf
    bool matched = false;
    for (const auto& alias : kAliases) {
      std::string_view a = alias.ascii;
      if (text.substr(i, a.size()) == a) {
        out.push_back(alias.symbol);
        i += a.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    unsigned char b = static_cast<unsigned char>(text[i]);
    if (b >= 0x80)
      throw DataError("non-ASCII byte in ascii-encoded string at position " +
                      std::to_string(i));
    out.push_back(static_cast<char32_t>(b));
    ++i;
  }
  return out;
}

}  // namespace dycklab

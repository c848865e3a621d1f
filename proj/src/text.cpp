#include "nomen/text.hpp"

namespace nomen {

Codepoint decode_utf8(std::string_view s, size_t pos) {
  auto bad = [&]() -> EncodingError {
    return EncodingError("invalid UTF-8 at byte " + std::to_string(pos));
  };
  unsigned char b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw bad();
  }
  if (pos + len > s.size()) throw bad();
  for (int i = 1; i < len; ++i) {
    unsigned char b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) throw bad();
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and surrogates.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
      cp > 0x10FFFF) {
    throw bad();
  }
  return {cp, len};
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

bool is_space_cp(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0 || c == 0x202F;
}

bool is_digit_cp(char32_t c) { return c >= '0' && c <= '9'; }

bool is_letter_cp(char32_t c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c >= 0xC0 && c <= 0xFF) return c != 0xD7 && c != 0xF7;
  if (c >= 0x100 && c <= 0x17F) return true;  // Latin Extended-A
  return false;
}

bool is_upper_cp(char32_t c) {
  if (c >= 'A' && c <= 'Z') return true;
  if (c >= 0xC0 && c <= 0xDE) return c != 0xD7;
  if (c >= 0x100 && c <= 0x177) return (c % 2) == 0;
  if (c == 0x178 || c == 0x179 || c == 0x17B || c == 0x17D) return true;
  return false;
}

bool is_lower_cp(char32_t c) { return is_letter_cp(c) && !is_upper_cp(c); }

bool is_apostrophe_cp(char32_t c) { return c == '\'' || c == 0x2019; }

char32_t to_lower_cp(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x177 && (c % 2) == 0) return c + 1;
  if (c == 0x178) return 0xFF;  // Ÿ -> ÿ
  if (c == 0x179 || c == 0x17B || c == 0x17D) return c + 1;
  return c;
}

std::string case_fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    Codepoint c = decode_utf8(s, i);
    char32_t v = is_apostrophe_cp(c.value) ? U'\'' : to_lower_cp(c.value);
    append_utf8(out, v);
    i += c.length;
  }
  return out;
}

char32_t acronym_fold_cp(char32_t c) {
  char32_t l = to_lower_cp(c);
  if (l >= 0xE0 && l <= 0xE5) return 'a';  // à..å
  if (l == 0xE6) return 'a';               // æ
  if (l == 0xE7) return 'c';               // ç
  if (l >= 0xE8 && l <= 0xEB) return 'e';  // è..ë
  if (l >= 0xEC && l <= 0xEF) return 'i';  // ì..ï
  if (l == 0xF1) return 'n';               // ñ
  if ((l >= 0xF2 && l <= 0xF6) || l == 0xF8) return 'o';
  if (l >= 0xF9 && l <= 0xFC) return 'u';  // ù..ü
  if (l == 0xFD || l == 0xFF) return 'y';
  if (l == 0x153) return 'o';  // œ
  if (l == 0x161) return 's';  // š
  if (l == 0x17E) return 'z';  // ž
  if (l == 0x107 || l == 0x10D) return 'c';
  if (l == 0x119 || l == 0x11B) return 'e';
  return l;
}

std::string acronym_fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    Codepoint c = decode_utf8(s, i);
    if (is_letter_cp(c.value)) append_utf8(out, acronym_fold_cp(c.value));
    i += c.length;
  }
  return out;
}

char32_t first_letter_cp(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    Codepoint c = decode_utf8(s, i);
    if (is_letter_cp(c.value)) return c.value;
    i += c.length;
  }
  return 0;
}

bool first_letter_upper(std::string_view s) {
  char32_t c = first_letter_cp(s);
  return c != 0 && is_upper_cp(c);
}

}  // namespace nomen

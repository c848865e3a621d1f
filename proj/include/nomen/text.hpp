#pragma once
// UTF-8 decoding and character classification for French newswire text.
// Covers ASCII, Latin-1 Supplement and Latin Extended-A; anything beyond
// is treated as punctuation-like.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nomen {

class EncodingError : public std::runtime_error {
 public:
  explicit EncodingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Codepoint {
  char32_t value;
  int length;  // encoded byte length
};

// Strict decode; throws EncodingError on malformed input.
Codepoint decode_utf8(std::string_view s, size_t pos);

void append_utf8(std::string& out, char32_t c);

bool is_space_cp(char32_t c);
bool is_digit_cp(char32_t c);
bool is_letter_cp(char32_t c);
bool is_upper_cp(char32_t c);
bool is_lower_cp(char32_t c);
bool is_apostrophe_cp(char32_t c);

char32_t to_lower_cp(char32_t c);

// Lowercases letters and normalizes typographic apostrophes to U+0027.
// Diacritics are preserved.
std::string case_fold(std::string_view s);

// Lowercases and strips diacritics; used when comparing acronym letters
// with word initials.
char32_t acronym_fold_cp(char32_t c);
std::string acronym_fold(std::string_view s);

// First letter of the string, U+0000 if none.
char32_t first_letter_cp(std::string_view s);
bool first_letter_upper(std::string_view s);

}  // namespace nomen

#pragma once
// Token stream with byte-offset spans, case classification and sentence
// boundaries. Everything downstream (matching, rules, acronyms) works on
// this representation.

#include <cstdint>
#include <string>
#include <vector>

namespace nomen {

enum class CaseClass { InitialUpper, AllCaps, Lower, Mixed, Digit, Punct };

const char* to_string(CaseClass c);

struct Token {
  std::string surface;
  uint32_t start = 0;  // byte offsets into the document text, half open
  uint32_t end = 0;
  CaseClass case_class = CaseClass::Punct;
  bool sentence_initial = false;
};

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<Token> tokens;
  // token-index ranges, half open; they partition the token stream
  std::vector<std::pair<uint32_t, uint32_t>> sentence_spans;

  uint32_t sentence_of(uint32_t token) const;
};

// Pure function: splits text into tokens and sentences.
//
// Hyphens, commas, full stops and parentheses are standalone Punct tokens.
// Apostrophe elisions ("l'", "d'", "qu'") split after the apostrophe; a
// longer word keeps its apostrophe ("Poor's"). Runs of two or more dots
// form one ellipsis token. A sentence opens after [.!?…] followed by
// whitespace and an uppercase-initial token, or after a blank line.
Document tokenize(std::string doc_id, std::string_view text);

// True for InitialUpper, AllCaps and Mixed tokens.
bool is_capitalized(const Token& t);
// Single "-" Punct token.
bool is_hyphen_token(const Token& t);
// Lowercase word token ending in an apostrophe ("l'", "d'").
bool is_elision_token(const Token& t);

}  // namespace nomen

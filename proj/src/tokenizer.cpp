#include "nomen/tokenizer.hpp"

#include "nomen/text.hpp"

namespace nomen {

const char* to_string(CaseClass c) {
  switch (c) {
    case CaseClass::InitialUpper: return "InitialUpper";
    case CaseClass::AllCaps: return "AllCaps";
    case CaseClass::Lower: return "Lower";
    case CaseClass::Mixed: return "Mixed";
    case CaseClass::Digit: return "Digit";
    case CaseClass::Punct: return "Punct";
  }
  return "?";
}

uint32_t Document::sentence_of(uint32_t token) const {
  for (uint32_t i = 0; i < sentence_spans.size(); ++i) {
    if (token >= sentence_spans[i].first && token < sentence_spans[i].second)
      return i;
  }
  return static_cast<uint32_t>(sentence_spans.size());
}

namespace {

CaseClass classify(std::string_view surface) {
  int letters = 0, uppers = 0, digits = 0;
  bool first_upper = false;
  size_t i = 0;
  while (i < surface.size()) {
    Codepoint c = decode_utf8(surface, i);
    if (is_letter_cp(c.value)) {
      if (letters == 0) first_upper = is_upper_cp(c.value);
      ++letters;
      if (is_upper_cp(c.value)) ++uppers;
    } else if (is_digit_cp(c.value)) {
      ++digits;
    }
    i += c.length;
  }
  if (letters == 0) return digits > 0 ? CaseClass::Digit : CaseClass::Punct;
  if (digits > 0) return CaseClass::Mixed;  // product codes like TVM430
  if (uppers == letters) {
    return letters >= 2 ? CaseClass::AllCaps : CaseClass::InitialUpper;
  }
  if (uppers == 0) return CaseClass::Lower;
  if (uppers == 1 && first_upper) return CaseClass::InitialUpper;
  return CaseClass::Mixed;
}

bool is_sentence_ender(const Token& t) {
  if (t.case_class != CaseClass::Punct) return false;
  if (t.surface == "!" || t.surface == "?" || t.surface == "…")
    return true;
  // "." and ellipses made of dots
  for (char ch : t.surface)
    if (ch != '.') return false;
  return !t.surface.empty();
}

// Gap text between two tokens: whitespace presence and blank-line check.
struct Gap {
  bool has_space = false;
  bool blank_line = false;
};

Gap gap_between(std::string_view text, uint32_t from, uint32_t to) {
  Gap g;
  int newlines = 0;
  size_t i = from;
  while (i < to) {
    Codepoint c = decode_utf8(text, i);
    if (is_space_cp(c.value)) {
      g.has_space = true;
      if (c.value == '\n') ++newlines;
    }
    i += c.length;
  }
  g.blank_line = newlines >= 2;
  return g;
}

}  // namespace

Document tokenize(std::string doc_id, std::string_view text) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text.assign(text);

  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    Codepoint c = decode_utf8(text, i);
    if (is_space_cp(c.value)) {
      i += c.length;
      continue;
    }
    size_t start = i;
    if (is_letter_cp(c.value) || is_digit_cp(c.value)) {
      int letters = 0;
      while (i < n) {
        Codepoint w = decode_utf8(text, i);
        if (is_letter_cp(w.value)) {
          ++letters;
          i += w.length;
        } else if (is_digit_cp(w.value)) {
          i += w.length;
        } else if (is_apostrophe_cp(w.value)) {
          i += w.length;
          if (letters <= 2 && i < n &&
              is_letter_cp(decode_utf8(text, i).value)) {
            break;  // elision: "l'" / "d'" / "qu'" ends here
          }
        } else {
          break;
        }
      }
    } else if (c.value == '.') {
      while (i < n && text[i] == '.') ++i;  // "..." is one token
    } else {
      i += c.length;  // single punctuation codepoint
    }
    Token t;
    t.surface.assign(text.substr(start, i - start));
    t.start = static_cast<uint32_t>(start);
    t.end = static_cast<uint32_t>(i);
    t.case_class = classify(t.surface);
    doc.tokens.push_back(std::move(t));
  }

  // Sentence boundaries.
  const uint32_t count = static_cast<uint32_t>(doc.tokens.size());
  uint32_t sent_start = 0;
  for (uint32_t k = 0; k + 1 < count; ++k) {
    const Token& cur = doc.tokens[k];
    const Token& next = doc.tokens[k + 1];
    Gap gap = gap_between(doc.text, cur.end, next.start);
    bool boundary = gap.blank_line ||
                    (is_sentence_ender(cur) && gap.has_space &&
                     first_letter_upper(next.surface));
    if (boundary) {
      doc.sentence_spans.emplace_back(sent_start, k + 1);
      sent_start = k + 1;
    }
  }
  if (count > 0) doc.sentence_spans.emplace_back(sent_start, count);
  for (auto& [b, e] : doc.sentence_spans) doc.tokens[b].sentence_initial = true;
  return doc;
}

bool is_capitalized(const Token& t) {
  return t.case_class == CaseClass::InitialUpper ||
         t.case_class == CaseClass::AllCaps || t.case_class == CaseClass::Mixed;
}

bool is_hyphen_token(const Token& t) {
  return t.case_class == CaseClass::Punct && t.surface == "-";
}

bool is_elision_token(const Token& t) {
  if (t.case_class != CaseClass::Lower) return false;
  if (t.surface.empty()) return false;
  size_t i = 0, last = 0;
  while (i < t.surface.size()) {
    Codepoint c = decode_utf8(t.surface, i);
    last = i;
    i += c.length;
  }
  return is_apostrophe_cp(decode_utf8(t.surface, last).value);
}

}  // namespace nomen

#pragma once
// Document-global passes: acronym definition detection, radical
// coreference links, and homonym disambiguation by counting the distinct
// forms of each candidate reference present in the document.

#include <string>
#include <vector>

#include "nomen/kb.hpp"
#include "nomen/mention.hpp"
#include "nomen/rules.hpp"
#include "nomen/tokenizer.hpp"

namespace nomen {

struct AcronymDef {
  uint32_t acro_token = 0;
  uint32_t exp_begin = 0, exp_end = 0;  // token range of the expansion
  bool expansion_first = true;
  RefId ref = kNone;
};

// True iff the acronym letters (case- and diacritic-folded) are produced
// left to right by word initials, where acronym-skippable words and
// punctuation may either contribute or be jumped and every other word
// must contribute. All words and all letters must be consumed.
bool match_acronym_letters(const std::string& acronym,
                           const std::vector<std::string>& words,
                           const DocumentKb& dkb);

// Finds "Expansion (ACR)" and "ACR (Expansion)" around parentheses,
// registers accepted pairs as forms of one overlay reference and rewrites
// the definition-site mentions (method AcronymDef). Occurrences elsewhere
// in the document are picked up by the overlay re-match pass.
std::vector<AcronymDef> detect_acronym_defs(const Document& doc,
                                            DocumentKb& dkb,
                                            std::vector<Mention>& mentions,
                                            const RulePack& pack);

struct RadicalLink {
  size_t short_mention = 0;  // indexes into the mention list
  size_t long_mention = 0;
  // Case-folded word sequence shared by both names; equals the short
  // mention's full sequence and a contiguous part of the long one.
  std::vector<std::string> shared_words;
};

// Transfers category and candidates to an uncategorized mention whose
// word sequence is contained in exactly one categorized name of the
// document; several distinct containing referents leave it doubtful.
// Returns the links applied.
std::vector<RadicalLink> link_radicals(const Document& doc,
                                       const DocumentKb& dkb,
                                       std::vector<Mention>& mentions);

// Resolves every multi-candidate mention: unique form-count maximum (>= 2)
// or a unique candidate backed by an unambiguous form wins; otherwise the
// best frequency rank is chosen and the mention flagged doubtful.
void disambiguate_global(const Document& doc, const DocumentKb& dkb,
                         std::vector<Mention>& mentions);

}  // namespace nomen

#pragma once
// Longest-match scanning of KB forms over a token stream. The base KB is
// compiled into a trie keyed on equivalence-class representatives; overlay
// forms are aligned directly (documents add at most a handful).

#include <optional>
#include <vector>

#include "nomen/kb.hpp"
#include "nomen/mention.hpp"
#include "nomen/tokenizer.hpp"

namespace nomen {

// Resolves tokens[begin..end) to the canonical lookup key: each token's
// word mapped to its equivalence representative, single hyphen tokens
// between words dropped. nullopt when a token does not resolve or hyphens
// are malformed (leading, trailing, doubled).
std::optional<NormKey> normalize_sequence(const DocumentKb& dkb,
                                          const Document& doc, uint32_t begin,
                                          uint32_t end);

// Splits each surface with the tokenizer (so "Saint-Louis" matches the
// two-word form), normalizes and returns all owning references.
std::vector<RefId> lookup_form(const DocumentKb& dkb,
                               const std::vector<std::string>& surfaces);

class FormMatcher {
 public:
  explicit FormMatcher(const KnowledgeBase& kb);

  // Longest-match-leftmost scan with consumption over [from, to).
  // Equal-length matches at one start merge their candidate sets. A match
  // must include at least one capitalized token.
  std::vector<Mention> scan(const Document& doc, const DocumentKb& dkb,
                            uint32_t from, uint32_t to) const;

  std::vector<Mention> match_known(const Document& doc,
                                   const DocumentKb& dkb) const;

 private:
  struct Node {
    std::vector<std::pair<NormId, uint32_t>> next;  // sorted by symbol
    std::vector<FormId> accepts;
  };
  uint32_t child(uint32_t node, NormId sym) const;
  const KnowledgeBase& kb_;
  std::vector<Node> nodes_;
};

}  // namespace nomen

#pragma once
// Detection and categorization of capitalized material not covered by KB
// forms: prototype rules segment and categorize by appearance, extension
// rules absorb adjacent known mentions, local-context rules read
// appositions, name complements and parentheses.

#include <optional>
#include <vector>

#include "nomen/kb.hpp"
#include "nomen/mention.hpp"
#include "nomen/rules.hpp"
#include "nomen/tokenizer.hpp"

namespace nomen {

// Maximal runs of capitalized tokens not covered by known mentions,
// bridged by single hyphens, elisions and hyphen-framed lowercase words
// ("-sur-"). A lone sentence-initial token that case-folds to a lowercase
// KB word is not a segment.
std::vector<std::pair<uint32_t, uint32_t>> detect_unknown_segments(
    const Document& doc, const DocumentKb& dkb,
    const std::vector<Mention>& known);

// Runs the prototype rulebase over name windows (segments plus adjacent
// known mentions) to fixpoint. Returns the full replacement mention list:
// grown prototype mentions, surviving known mentions, and uncategorized
// mentions for leftover segments.
std::vector<Mention> extend_and_classify(const Document& doc,
                                         const DocumentKb& dkb,
                                         const std::vector<Mention>& known,
                                         const RulePack& pack);

// Single-segment convenience used by tests: the grown mention covering
// the segment, if any rule fired.
std::optional<Mention> apply_prototypes(std::pair<uint32_t, uint32_t> segment,
                                        const Document& doc,
                                        const DocumentKb& dkb,
                                        const RulePack& pack,
                                        const std::vector<Mention>& known);

// Applies context rules to one mention: assignment for uncategorized
// mentions, candidate restriction for ambiguous ones. A restriction that
// would empty the candidate set is rejected and the mention marked
// doubtful. `mentions` supplies the parenthetical inner mentions.
Mention apply_local_context(Mention m, const Document& doc,
                            const DocumentKb& dkb, const RulePack& pack,
                            const std::vector<Mention>& mentions);

}  // namespace nomen

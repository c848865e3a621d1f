#pragma once
// Declarative rule packs: prototype rules that segment and categorize
// unknown capitalized material by its appearance, and context rules that
// read the immediate neighbourhood of a mention.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomen/kb.hpp"

namespace nomen {

class RuleError : public std::runtime_error {
 public:
  explicit RuleError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class AtomKind { WordAttr, UnknownUpcase, KnownMention, Literal };

struct PatternAtom {
  AtomKind kind = AtomKind::UnknownUpcase;
  std::string attribute;  // WordAttr
  std::string category;   // KnownMention
  std::string text;       // Literal, matched case-folded over token runs
};

struct PrototypeRule {
  std::string id;
  int priority = 0;  // higher fires first
  bool extendable = true;
  std::string category;
  std::vector<PatternAtom> pattern;
};

enum class Relation { AppositionAfter, ComplementOfBefore, ParentheticalAfter };
enum class ContextAction { AssignCategory, Restrict };

struct ContextRule {
  std::string id;
  std::string trigger;  // word attribute, or required category of the
                        // parenthetical mention
  Relation relation = Relation::AppositionAfter;
  ContextAction action = ContextAction::AssignCategory;
  std::string category;   // AssignCategory / Restrict by category
  std::string predicate;  // "contained-in" for containment restriction
};

struct RulePack {
  std::vector<std::string> of_prepositions;  // folded
  std::vector<PrototypeRule> prototypes;     // sorted: priority desc, id asc
  std::vector<ContextRule> contexts;         // file order
};

RulePack load_rules(std::istream& in);
RulePack load_rules_text(const std::string& jsonl);
RulePack load_rules_file(const std::string& path);

// Checks rule categories and trigger attributes against the KB.
void validate_rules(const RulePack& pack, const KnowledgeBase& kb);

}  // namespace nomen

#pragma once
// Fixed pass order over one document:
//   tokenize -> match known forms -> acronym definitions -> overlay
//   re-match -> prototype extension -> local context (unknowns, then
//   ambiguous knowns) -> radical links -> global disambiguation.

#include <string>
#include <vector>

#include "nomen/kb.hpp"
#include "nomen/matcher.hpp"
#include "nomen/mention.hpp"
#include "nomen/rules.hpp"
#include "nomen/tokenizer.hpp"

namespace nomen {

struct AnnotationRecord {
  std::string doc_id;
  uint32_t start_byte = 0;
  uint32_t end_byte = 0;
  std::string surface;
  std::string category;   // "unknown" when no category was established
  std::string reference;  // "" when the mention has no reference
  double confidence = 0.0;
  bool doubtful = false;
  std::string method;
};

std::string to_jsonl(const AnnotationRecord& rec);
AnnotationRecord record_from_json(const std::string& line);

struct PipelineOptions {
  // The disambiguation passes can be disabled; they never change spans,
  // only categories, references and doubt flags.
  bool radical_pass = true;
  bool global_pass = true;
};

struct AnnotateResult {
  Document doc;
  std::vector<Mention> mentions;
  std::vector<AnnotationRecord> records;
};

class Annotator {
 public:
  // Validates the rule pack against the KB (throws RuleError).
  Annotator(const KnowledgeBase& kb, RulePack rules, PipelineOptions opts = {});

  std::vector<AnnotationRecord> annotate(const std::string& doc_id,
                                         std::string_view text) const;
  AnnotateResult annotate_full(const std::string& doc_id,
                               std::string_view text) const;

  const KnowledgeBase& kb() const { return kb_; }
  const RulePack& rules() const { return rules_; }

 private:
  const KnowledgeBase& kb_;
  RulePack rules_;
  FormMatcher matcher_;
  PipelineOptions opts_;
};

}  // namespace nomen

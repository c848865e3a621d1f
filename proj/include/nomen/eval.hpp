#pragma once
// Span-exact scoring of predicted annotations against a gold standard.

#include <map>
#include <stdexcept>
#include <string>

namespace nomen {

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalReport {
  double detection_recall = 1.0;
  double detection_precision = 1.0;
  // Over span-matched mentions only.
  double categorization_accuracy = 1.0;
  size_t gold_total = 0;
  size_t predicted_total = 0;
  size_t matched = 0;
  size_t category_correct = 0;
  bool zero_predictions = false;
  std::map<std::string, size_t> per_category;  // predicted mentions
  std::map<std::string, size_t> per_method;
  double words_per_minute = 0.0;  // filled by callers that timed annotation

  std::string to_string() const;
};

// Both arguments are line-JSON annotation streams. Throws EvalError on a
// malformed line or on a predicted doc_id that the gold stream does not
// contain.
EvalReport eval_corpus(const std::string& gold_jsonl,
                       const std::string& pred_jsonl);

}  // namespace nomen

#include "nomen/eval.hpp"

#include <sstream>
#include <vector>

#include "nomen/pipeline.hpp"

namespace nomen {

namespace {

struct GoldSpan {
  uint32_t start, end;
  std::string category;
};

std::map<std::string, std::vector<AnnotationRecord>> parse_records(
    const std::string& jsonl, const char* what) {
  std::map<std::string, std::vector<AnnotationRecord>> by_doc;
  std::istringstream in(jsonl);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      AnnotationRecord rec = record_from_json(line);
      by_doc[rec.doc_id].push_back(std::move(rec));
    } catch (const std::exception& e) {
      throw EvalError(std::string(what) + " line " + std::to_string(lineno) +
                      ": " + e.what());
    }
  }
  return by_doc;
}

}  // namespace

EvalReport eval_corpus(const std::string& gold_jsonl,
                       const std::string& pred_jsonl) {
  auto gold = parse_records(gold_jsonl, "gold");
  auto pred = parse_records(pred_jsonl, "predicted");

  for (const auto& [doc_id, recs] : pred) {
    (void)recs;
    if (!gold.count(doc_id))
      throw EvalError("predicted doc_id '" + doc_id +
                      "' missing from the gold stream");
  }

  EvalReport report;
  for (const auto& [doc_id, recs] : gold) report.gold_total += recs.size();

  for (const auto& [doc_id, recs] : pred) {
    std::map<std::pair<uint32_t, uint32_t>, std::string> gold_spans;
    for (const auto& g : gold[doc_id])
      gold_spans[{g.start_byte, g.end_byte}] = g.category;
    for (const auto& p : recs) {
      ++report.predicted_total;
      ++report.per_category[p.category];
      if (!p.method.empty()) ++report.per_method[p.method];
      auto it = gold_spans.find({p.start_byte, p.end_byte});
      if (it == gold_spans.end()) continue;
      ++report.matched;
      if (it->second == p.category) ++report.category_correct;
    }
  }

  report.detection_recall =
      report.gold_total == 0
          ? 1.0
          : static_cast<double>(report.matched) / report.gold_total;
  if (report.predicted_total == 0) {
    report.detection_precision = 1.0;
    report.zero_predictions = true;
  } else {
    report.detection_precision =
        static_cast<double>(report.matched) / report.predicted_total;
  }
  report.categorization_accuracy =
      report.matched == 0
          ? 1.0
          : static_cast<double>(report.category_correct) / report.matched;
  return report;
}

std::string EvalReport::to_string() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "detection_recall " << detection_recall << " (" << matched << "/"
      << gold_total << ")\n";
  out << "detection_precision " << detection_precision << " (" << matched
      << "/" << predicted_total << ")";
  if (zero_predictions) out << " [zero predictions]";
  out << "\n";
  out << "categorization_accuracy " << categorization_accuracy << " ("
      << category_correct << "/" << matched << ")\n";
  for (const auto& [cat, n] : per_category)
    out << "category " << cat << " " << n << "\n";
  for (const auto& [method, n] : per_method)
    out << "method " << method << " " << n << "\n";
  if (words_per_minute > 0) {
    out.precision(0);
    out << "words_per_minute " << words_per_minute << "\n";
  }
  return out.str();
}

}  // namespace nomen

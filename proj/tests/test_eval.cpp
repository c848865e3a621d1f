#include "doctest.h"
#include "nomen/eval.hpp"
#include "nomen/pipeline.hpp"
#include "support.hpp"

using namespace nomen;

namespace {

std::string rec(const std::string& doc, uint32_t s, uint32_t e,
                const std::string& cat) {
  AnnotationRecord r;
  r.doc_id = doc;
  r.start_byte = s;
  r.end_byte = e;
  r.surface = "x";
  r.category = cat;
  r.method = "known-form";
  return to_jsonl(r) + "\n";
}

}  // namespace

TEST_CASE("identical files score perfectly") {
  std::string gold = rec("a", 0, 4, "company") + rec("a", 10, 14, "location") +
                     rec("b", 3, 9, "human-being");
  EvalReport r = eval_corpus(gold, gold);
  CHECK(r.detection_recall == 1.0);
  CHECK(r.detection_precision == 1.0);
  CHECK(r.categorization_accuracy == 1.0);
  CHECK(r.gold_total == 3);
  CHECK_FALSE(r.zero_predictions);
}

TEST_CASE("empty predictions: zero recall, precision flagged as degenerate") {
  std::string gold = rec("a", 0, 4, "company");
  EvalReport r = eval_corpus(gold, "");
  CHECK(r.detection_recall == 0.0);
  CHECK(r.detection_precision == 1.0);
  CHECK(r.zero_predictions);
}

TEST_CASE("category mismatches lower accuracy but not detection") {
  std::string gold = rec("a", 0, 4, "company") + rec("a", 10, 14, "location");
  std::string pred = rec("a", 0, 4, "company") + rec("a", 10, 14, "company");
  EvalReport r = eval_corpus(gold, pred);
  CHECK(r.detection_recall == 1.0);
  CHECK(r.categorization_accuracy == doctest::Approx(0.5));
}

TEST_CASE("span mismatches count against recall and precision") {
  std::string gold = rec("a", 0, 4, "company") + rec("a", 10, 14, "location");
  std::string pred = rec("a", 0, 4, "company") + rec("a", 10, 15, "location") +
                     rec("a", 20, 24, "company");
  EvalReport r = eval_corpus(gold, pred);
  CHECK(r.matched == 1);
  CHECK(r.detection_recall == doctest::Approx(0.5));
  CHECK(r.detection_precision == doctest::Approx(1.0 / 3));
}

TEST_CASE("a predicted doc_id missing from gold is an alignment error") {
  std::string gold = rec("a", 0, 4, "company");
  std::string pred = rec("zzz", 0, 4, "company");
  CHECK_THROWS_AS(eval_corpus(gold, pred), EvalError);
}

TEST_CASE("malformed lines are parse errors") {
  CHECK_THROWS_AS(eval_corpus("{broken", ""), EvalError);
  CHECK_THROWS_AS(eval_corpus("", "{broken"), EvalError);
}

TEST_CASE("per-category and per-method counts cover all predictions") {
  std::string gold = rec("a", 0, 4, "company");
  std::string pred = rec("a", 0, 4, "company") + rec("a", 8, 9, "location");
  EvalReport r = eval_corpus(gold, pred);
  CHECK(r.per_category.at("company") == 1);
  CHECK(r.per_category.at("location") == 1);
  CHECK(r.per_method.at("known-form") == 2);
}

#include "doctest.h"
#include "nomen/matcher.hpp"
#include "nomen/unknown.hpp"
#include "support.hpp"

using namespace nomen;
using namespace nomen::testing;

namespace {

struct Ctx {
  const KnowledgeBase& kb = sample_kb();
  FormMatcher matcher{kb};
  DocumentKb dkb{kb};
  const RulePack& rules = sample_rules();

  std::vector<Mention> classify(const std::string& text, Document& doc_out) {
    doc_out = tokenize("d", text);
    auto known = matcher.match_known(doc_out, dkb);
    return extend_and_classify(doc_out, dkb, known, rules);
  }
};

const Mention* find_span(const std::vector<Mention>& ms, uint32_t b,
                         uint32_t e) {
  for (const auto& m : ms)
    if (m.begin == b && m.end == e) return &m;
  return nullptr;
}

}  // namespace

TEST_CASE("two unknown capitalized words form one segment") {
  Ctx ctx;
  Document doc = tokenize("d", "hier André Blavier est venu");
  auto segments = detect_unknown_segments(doc, ctx.dkb, {});
  REQUIRE(segments.size() == 1);
  CHECK(segments[0] == std::pair<uint32_t, uint32_t>{1, 3});
}

TEST_CASE("all-lowercase sentence yields no segments") {
  Ctx ctx;
  Document doc = tokenize("d", "rien ne se passe ici");
  CHECK(detect_unknown_segments(doc, ctx.dkb, {}).empty());
}

TEST_CASE("hyphens and framed lowercase words are bridged") {
  Ctx ctx;
  Document doc = tokenize("d", "Condé-sur-Huisne");
  auto segments = detect_unknown_segments(doc, ctx.dkb, {});
  REQUIRE(segments.size() == 1);
  CHECK(segments[0] == std::pair<uint32_t, uint32_t>{0, 5});
}

TEST_CASE("sentence-initial common words are not segments") {
  Ctx ctx;
  Document doc = tokenize("d", "Selon la presse locale");
  CHECK(detect_unknown_segments(doc, ctx.dkb, {}).empty());
  // but mid-segment they survive as part of a longer run
  Document doc2 = tokenize("d", "Selon Blavier");
  auto segments = detect_unknown_segments(doc2, ctx.dkb, {});
  REQUIRE(segments.size() == 1);
  CHECK(segments[0] == std::pair<uint32_t, uint32_t>{1, 2});
}

TEST_CASE("prototype: unknown word plus legal form is a company") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("Kyocera Corp annonce ses résultats", doc);
  const Mention* m = find_span(mentions, 0, 2);
  REQUIRE(m);
  CHECK(m->category == "company");
  CHECK(m->method == Method::Prototype);
  CHECK(m->confidence == kConfPrototype);
}

TEST_CASE("prototype via the segment-level operation") {
  Ctx ctx;
  Document doc = tokenize("d", "Kyocera Corp");
  auto grown = apply_prototypes({0, 2}, doc, ctx.dkb, ctx.rules, {});
  REQUIRE(grown);
  CHECK(grown->category == "company");
}

TEST_CASE("extension absorbs known mentions: IBM-France") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("IBM-France recrute fortement", doc);
  const Mention* m = find_span(mentions, 0, 3);
  REQUIRE(m);
  CHECK(m->category == "company");
  CHECK(m->method == Method::Prototype);
  // the absorbed IBM and France mentions are gone
  CHECK(mentions.size() == 1);
}

TEST_CASE("chained extensions cover the full subsidiary name") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("Siam Nissan Automobile Co Ltd progresse", doc);
  const Mention* m = find_span(mentions, 0, 5);
  REQUIRE(m);
  CHECK(m->category == "company");
  CHECK(mentions.size() == 1);
}

TEST_CASE("first-name prototype and title extension") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("On attend André Blavier Jr demain", doc);
  const Mention* m = find_span(mentions, 2, 5);
  REQUIRE(m);
  CHECK(m->category == "human-being");
}

TEST_CASE("uncategorized leftovers become doubtful unknown mentions") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("Peskine est resté discret", doc);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].category.empty());
  CHECK(mentions[0].doubtful);
  CHECK(mentions[0].method == Method::Prototype);
  // sentence-initial single InitialUpper: demoted confidence
  CHECK(mentions[0].confidence == kConfSentenceInitialOnly);

  Document doc2;
  auto mid = ctx.classify("Selon Peskine, rien ne change", doc2);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].confidence == kConfUncategorized);
}

TEST_CASE("apposition categorizes an isolated name as a person") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("Peskine, director of the group", doc);
  REQUIRE(mentions.size() == 1);
  Mention m =
      apply_local_context(mentions[0], doc, ctx.dkb, ctx.rules, mentions);
  CHECK(m.category == "human-being");
  CHECK(m.method == Method::LocalContext);
  CHECK(m.confidence == kConfLocalContext);
  CHECK_FALSE(m.doubtful);
}

TEST_CASE("location name complement: the mayor of Gisenyi") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("the mayor of Gisenyi spoke", doc);
  REQUIRE(mentions.size() == 1);
  Mention m =
      apply_local_context(mentions[0], doc, ctx.dkb, ctx.rules, mentions);
  CHECK(m.category == "location");
}

TEST_CASE("the same trigger word fires by relation, not by accident") {
  Ctx ctx;
  // apposition after the name: human being
  Document doc1;
  auto ms1 = ctx.classify("Chirac, maire de la ville", doc1);
  REQUIRE_FALSE(ms1.empty());
  Mention m1 = apply_local_context(ms1[0], doc1, ctx.dkb, ctx.rules, ms1);
  CHECK(m1.category == "human-being");
  // complement before the name: location
  Document doc2;
  auto ms2 = ctx.classify("le maire de Royan", doc2);
  REQUIRE_FALSE(ms2.empty());
  Mention m2 = apply_local_context(ms2[0], doc2, ctx.dkb, ctx.rules, ms2);
  CHECK(m2.category == "location");
}

TEST_CASE("restriction prunes homonym candidates by category") {
  Ctx ctx;
  Document doc = tokenize("d", "le maire de Saint-Louis");
  auto mentions = ctx.matcher.match_known(doc, ctx.dkb);
  REQUIRE(mentions.size() == 1);
  REQUIRE(mentions[0].candidates.size() == 5);
  Mention m =
      apply_local_context(mentions[0], doc, ctx.dkb, ctx.rules, mentions);
  REQUIRE(m.candidates.size() == 2);  // companies and hospital removed
  for (RefId r : m.candidates) CHECK(ctx.dkb.category_of(r) == "location");
}

TEST_CASE("a restriction that would empty the set is rejected") {
  Ctx ctx;
  Document doc = tokenize("d", "le maire de la Générale");
  auto mentions = ctx.matcher.match_known(doc, ctx.dkb);
  REQUIRE(mentions.size() == 1);
  REQUIRE(mentions[0].candidates.size() == 3);  // all banks/companies
  Mention m =
      apply_local_context(mentions[0], doc, ctx.dkb, ctx.rules, mentions);
  CHECK(m.candidates.size() == 3);  // unchanged
  CHECK(m.doubtful);
}

TEST_CASE("local context never widens and never changes the span") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("le maire de Saint-Louis et Peskine", doc);
  for (const auto& before : mentions) {
    Mention after =
        apply_local_context(before, doc, ctx.dkb, ctx.rules, mentions);
    CHECK(after.begin == before.begin);
    CHECK(after.end == before.end);
    if (!before.candidates.empty())
      CHECK(after.candidates.size() <= before.candidates.size());
  }
}

TEST_CASE("classification is deterministic") {
  Ctx ctx;
  Document doc1, doc2;
  std::string text = "Siam Nissan Automobile Co Ltd et André Blavier Jr";
  auto a = ctx.classify(text, doc1);
  auto b = ctx.classify(text, doc2);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].begin == b[i].begin);
    CHECK(a[i].end == b[i].end);
    CHECK(a[i].category == b[i].category);
  }
}

TEST_CASE("unknown mentions stay within one sentence") {
  Ctx ctx;
  Document doc;
  auto mentions = ctx.classify("Il a vu Blavier. Peskine est venu aussi", doc);
  for (const auto& m : mentions) {
    CHECK(doc.sentence_of(m.begin) == doc.sentence_of(m.end - 1));
  }
  CHECK(find_span(mentions, 3, 4) != nullptr);
  CHECK(find_span(mentions, 5, 6) != nullptr);
}

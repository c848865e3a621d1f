#include <sstream>

#include "doctest.h"
#include "nomen/kb.hpp"
#include "nomen/matcher.hpp"
#include "support.hpp"

using namespace nomen;
using namespace nomen::testing;

namespace {

std::vector<std::string> ref_ids(const DocumentKb& dkb,
                                 const std::vector<RefId>& refs) {
  std::vector<std::string> out;
  for (RefId r : refs) out.push_back(dkb.ref_id(r));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("New York form resolves to the location reference") {
  DocumentKb dkb(sample_kb());
  auto refs = lookup_form(dkb, {"New", "York"});
  CHECK(ref_ids(dkb, refs) == std::vector<std::string>{"r-new-york"});
}

TEST_CASE("synonym and homonym lookups") {
  DocumentKb dkb(sample_kb());
  CHECK(ref_ids(dkb, lookup_form(dkb, {"Hexagone"})) ==
        std::vector<std::string>{"r-france"});
  auto five = lookup_form(dkb, {"Saint-Louis"});
  CHECK(five.size() == 5);
  CHECK(ref_ids(dkb, five) ==
        std::vector<std::string>{"r-cristalleries", "r-hopital-saint-louis",
                                 "r-saint-louis-bas-rhin",
                                 "r-saint-louis-group",
                                 "r-saint-louis-missouri"});
  CHECK(lookup_form(dkb, {"Zzzxq"}).empty());
}

TEST_CASE("empty record stream yields an empty KB") {
  std::istringstream in("");
  KnowledgeBase kb = load_kb(in);
  CHECK(kb.words().empty());
  CHECK(kb.references().empty());
  DocumentKb dkb(kb);
  CHECK(lookup_form(dkb, {"anything"}).empty());
}

TEST_CASE("load errors") {
  SUBCASE("dangling word id") {
    std::string text =
        R"({"kind":"header","format":1,"categories":["ca"]})"
        "\n"
        R"({"kind":"word","id":"w1","surface":"Ok"})"
        "\n"
        R"({"kind":"form","id":"f1","ref":"r1","words":["w-missing"]})"
        "\n"
        R"({"kind":"reference","id":"r1","category":"ca","canonical":"f1"})"
        "\n";
    CHECK_THROWS_WITH_AS(load_kb(text), doctest::Contains("w-missing"),
                         LoadError);
  }
  SUBCASE("parse error carries the line number") {
    std::string text =
        R"({"kind":"header","format":1,"categories":["ca"]})"
        "\n{{{\n";
    CHECK_THROWS_WITH_AS(load_kb(text), doctest::Contains("line 2"),
                         LoadError);
  }
  SUBCASE("unknown record kind") {
    CHECK_THROWS_AS(load_kb(std::string(R"({"kind":"mystery"})") + "\n"),
                    LoadError);
  }
  SUBCASE("shared form without homonym link") {
    std::string text =
        R"({"kind":"header","format":1,"categories":["ca"]})"
        "\n"
        R"({"kind":"word","id":"w1","surface":"Twin"})"
        "\n"
        R"({"kind":"form","id":"f1","ref":"r1","words":["w1"]})"
        "\n"
        R"({"kind":"form","id":"f2","ref":"r2","words":["w1"]})"
        "\n"
        R"({"kind":"reference","id":"r1","category":"ca","canonical":"f1"})"
        "\n"
        R"({"kind":"reference","id":"r2","category":"ca","canonical":"f2"})"
        "\n";
    CHECK_THROWS_WITH_AS(load_kb(text),
                         doctest::Contains("shared-form-no-homonym"),
                         LoadError);
  }
}

TEST_CASE("validator flags invariant violations on constructed KBs") {
  SUBCASE("two references share a form but lack a homonym link") {
    KbBuilder b;
    b.header({"ca"});
    b.word("w1", "Twin");
    b.form("f1", "r1", {"w1"});
    b.form("f2", "r2", {"w1"});
    b.reference("r1", "ca", "f1");
    b.reference("r2", "ca", "f2");
    KnowledgeBase kb = b.build(false);
    ValidationReport report = validate_kb(kb);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
      if (v.check == "shared-form-no-homonym" &&
          v.entity.find("r1") != std::string::npos &&
          v.entity.find("r2") != std::string::npos)
        found = true;
    CHECK(found);
  }
  SUBCASE("equivalence class with a single member") {
    KbBuilder b;
    b.header({"ca"});
    b.word("w1", "Solo");
    b.equiv("eq1", {"w1"});
    b.form("f1", "r1", {"w1"});
    b.reference("r1", "ca", "f1");
    ValidationReport report = validate_kb(b.build(false));
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].check == "equiv-underpopulated");
    CHECK(report.violations[0].entity == "eq1");
  }
  SUBCASE("canonical form owned by another reference") {
    KbBuilder b;
    b.header({"ca"});
    b.word("w1", "Uno");
    b.word("w2", "Due");
    b.form("f1", "r1", {"w1"});
    b.form("f2", "r2", {"w2"});
    b.reference("r1", "ca", "f2");  // not its own form
    b.reference("r2", "ca", "f2");
    ValidationReport report = validate_kb(b.build(false));
    bool found = false;
    for (const auto& v : report.violations)
      if (v.check == "canonical-owner" && v.entity == "r1") found = true;
    CHECK(found);
  }
}

TEST_CASE("the bundled sample KB validates clean") {
  CHECK(validate_kb(sample_kb()).ok());
}

TEST_CASE("serialization round trip preserves all entity sets") {
  const KnowledgeBase& kb = sample_kb();
  std::string once = serialize_kb(kb);
  KnowledgeBase again = load_kb(once);
  std::string why;
  CHECK_MESSAGE(kb_equal(kb, again, &why), why);
  // And serialization itself is deterministic.
  CHECK(serialize_kb(again) == once);
}

TEST_CASE("random KBs survive the serialization round trip") {
  for (uint32_t seed = 1000; seed < 1040; ++seed) {
    KnowledgeBase kb = random_kb_case(seed).kb;
    KnowledgeBase again = load_kb(serialize_kb(kb));
    std::string why;
    CHECK_MESSAGE(kb_equal(kb, again, &why), "seed ", seed, ": ", why);
  }
}

TEST_CASE("every form is found by lookup on its exact surfaces") {
  const KnowledgeBase& kb = sample_kb();
  DocumentKb dkb(kb);
  for (const auto& f : kb.forms()) {
    std::vector<std::string> surfaces;
    for (WordId w : f.words) surfaces.push_back(kb.words()[w].surface);
    auto owners = lookup_form(dkb, surfaces);
    CHECK(std::find(owners.begin(), owners.end(), f.owner) != owners.end());
  }
}

TEST_CASE("equivalence-class siblings are interchangeable in lookups") {
  const KnowledgeBase& kb = sample_kb();
  DocumentKb dkb(kb);
  for (const auto& f : kb.forms()) {
    std::vector<std::string> surfaces;
    for (WordId w : f.words) surfaces.push_back(kb.words()[w].surface);
    auto baseline = lookup_form(dkb, surfaces);
    for (size_t i = 0; i < f.words.size(); ++i) {
      const Word& w = kb.words()[f.words[i]];
      if (w.equiv == kNone) continue;
      for (WordId sibling : kb.equivs()[w.equiv].members) {
        auto swapped = surfaces;
        swapped[i] = kb.words()[sibling].surface;
        CHECK(lookup_form(dkb, swapped) == baseline);
      }
    }
  }
}

TEST_CASE("overlay extension registers acronym forms") {
  DocumentKb dkb(sample_kb());
  DocumentKb::NewRef proto;
  proto.category = "institution";
  RefId r = dkb.extend(
      "doc:ipai", proto,
      {{"IPAI"}, {"International", "Primary", "Aluminium", "Institute"}});
  CHECK(ref_ids(dkb, lookup_form(dkb, {"IPAI"})) ==
        std::vector<std::string>{"doc:ipai"});
  CHECK(ref_ids(dkb, lookup_form(dkb, {"International", "Primary",
                                       "Aluminium", "Institute"})) ==
        std::vector<std::string>{"doc:ipai"});

  // Idempotent: same id and form again returns the same reference.
  RefId r2 = dkb.extend("doc:ipai", proto, {{"IPAI"}});
  CHECK(r == r2);
  CHECK(lookup_form(dkb, {"IPAI"}).size() == 1);
}

TEST_CASE("overlay collision with a base form joins as homonym") {
  DocumentKb dkb(sample_kb());
  DocumentKb::NewRef proto;
  proto.category = "institution";
  RefId r = dkb.extend("doc:cdc2", proto,
                       {{"Centre", "de", "Documentation", "Communale"}});
  dkb.add_form(r, {"CDC"});
  auto owners = lookup_form(dkb, {"CDC"});
  CHECK(ref_ids(dkb, owners) ==
        std::vector<std::string>{"doc:cdc2", "r-caisse-depots"});
  auto base_ref = sample_kb().ref_index("r-caisse-depots");
  REQUIRE(base_ref);
  auto homs = dkb.homonyms_of(*base_ref);
  CHECK(std::find(homs.begin(), homs.end(), r) != homs.end());
  homs = dkb.homonyms_of(r);
  CHECK(std::find(homs.begin(), homs.end(), *base_ref) != homs.end());
}

TEST_CASE("overlay isolation: a fresh DocumentKb sees no prior additions") {
  const KnowledgeBase& kb = sample_kb();
  {
    DocumentKb dkb_a(kb);
    DocumentKb::NewRef proto;
    proto.category = "company";
    dkb_a.extend("doc:ghost", proto, {{"Ghostly", "Name"}});
    CHECK_FALSE(lookup_form(dkb_a, {"Ghostly", "Name"}).empty());
  }
  DocumentKb dkb_b(kb);
  CHECK(lookup_form(dkb_b, {"Ghostly", "Name"}).empty());
  CHECK_FALSE(dkb_b.find_ref("doc:ghost").has_value());
}

TEST_CASE("multi-file load overlays later records") {
  std::string base =
      R"({"kind":"header","format":1,"categories":["ca"]})"
      "\n"
      R"({"kind":"word","id":"w1","surface":"Acme"})"
      "\n"
      R"({"kind":"form","id":"f1","ref":"r1","words":["w1"]})"
      "\n"
      R"({"kind":"reference","id":"r1","category":"ca","canonical":"f1","rank":7})"
      "\n";
  std::string patch =
      R"({"kind":"reference","id":"r1","category":"ca","canonical":"f1","rank":1})"
      "\n";
  // Write to temp files to exercise the file API.
  std::string p1 = "/tmp/nomen_kb_base.jsonl", p2 = "/tmp/nomen_kb_patch.jsonl";
  {
    std::ofstream o1(p1), o2(p2);
    o1 << base;
    o2 << patch;
  }
  KnowledgeBase kb = load_kb_files({p1, p2});
  auto r = kb.ref_index("r1");
  REQUIRE(r);
  CHECK(kb.references()[*r].rank == 1);
}

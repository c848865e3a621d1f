#include "nomen/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nomen/text.hpp"

namespace nomen {

using json = nlohmann::json;

namespace {

std::string want_string(const json& j, const char* field, int line) {
  if (!j.contains(field) || !j[field].is_string())
    throw RuleError("line " + std::to_string(line) +
                    ": missing string field '" + std::string(field) + "'");
  return j[field].get<std::string>();
}

PatternAtom parse_atom(const json& j, int line) {
  PatternAtom atom;
  std::string kind = want_string(j, "atom", line);
  if (kind == "word-attr") {
    atom.kind = AtomKind::WordAttr;
    atom.attribute = want_string(j, "attribute", line);
  } else if (kind == "unknown-upcase") {
    atom.kind = AtomKind::UnknownUpcase;
  } else if (kind == "known-mention") {
    atom.kind = AtomKind::KnownMention;
    atom.category = want_string(j, "category", line);
  } else if (kind == "literal") {
    atom.kind = AtomKind::Literal;
    atom.text = case_fold(want_string(j, "text", line));
  } else {
    throw RuleError("line " + std::to_string(line) + ": unknown atom '" +
                    kind + "'");
  }
  return atom;
}

Relation parse_relation(const std::string& s, int line) {
  if (s == "apposition-after") return Relation::AppositionAfter;
  if (s == "complement-of-before") return Relation::ComplementOfBefore;
  if (s == "parenthetical-after") return Relation::ParentheticalAfter;
  throw RuleError("line " + std::to_string(line) + ": unknown relation '" + s +
                  "'");
}

}  // namespace

RulePack load_rules(std::istream& in) {
  RulePack pack;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw RuleError("line " + std::to_string(lineno) + ": parse error: " +
                      e.what());
    }
    std::string kind = want_string(j, "kind", lineno);
    if (kind == "header") {
      if (j.contains("of_prepositions"))
        for (const auto& p : j["of_prepositions"])
          pack.of_prepositions.push_back(case_fold(p.get<std::string>()));
    } else if (kind == "prototype-rule") {
      PrototypeRule r;
      r.id = want_string(j, "id", lineno);
      r.category = want_string(j, "category", lineno);
      r.priority = j.value("priority", 0);
      r.extendable = j.value("extendable", true);
      if (!j.contains("pattern") || !j["pattern"].is_array() ||
          j["pattern"].empty())
        throw RuleError("line " + std::to_string(lineno) +
                        ": prototype rule needs a nonempty pattern");
      for (const auto& a : j["pattern"]) r.pattern.push_back(parse_atom(a, lineno));
      pack.prototypes.push_back(std::move(r));
    } else if (kind == "context-rule") {
      ContextRule r;
      r.id = want_string(j, "id", lineno);
      r.trigger = want_string(j, "trigger", lineno);
      r.relation = parse_relation(want_string(j, "relation", lineno), lineno);
      std::string action = want_string(j, "action", lineno);
      if (action == "assign") {
        r.action = ContextAction::AssignCategory;
        r.category = want_string(j, "category", lineno);
      } else if (action == "restrict") {
        r.action = ContextAction::Restrict;
        if (j.contains("predicate"))
          r.predicate = j["predicate"].get<std::string>();
        else
          r.category = want_string(j, "category", lineno);
      } else {
        throw RuleError("line " + std::to_string(lineno) +
                        ": unknown action '" + action + "'");
      }
      pack.contexts.push_back(std::move(r));
    } else {
      throw RuleError("line " + std::to_string(lineno) +
                      ": unknown record kind '" + kind + "'");
    }
  }
  if (pack.of_prepositions.empty())
    pack.of_prepositions = {"of", "de", "du", "des", "d'"};
  std::stable_sort(pack.prototypes.begin(), pack.prototypes.end(),
                   [](const PrototypeRule& a, const PrototypeRule& b) {
                     if (a.priority != b.priority) return a.priority > b.priority;
                     return a.id < b.id;
                   });
  return pack;
}

RulePack load_rules_text(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return load_rules(in);
}

RulePack load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RuleError("cannot open rule file '" + path + "'");
  try {
    return load_rules(in);
  } catch (const RuleError& e) {
    throw RuleError(path + ": " + e.what());
  }
}

void validate_rules(const RulePack& pack, const KnowledgeBase& kb) {
  auto check_category = [&](const std::string& c, const std::string& id) {
    const auto& cats = kb.categories();
    if (std::find(cats.begin(), cats.end(), c) == cats.end())
      throw RuleError("rule " + id + ": category '" + c +
                      "' not declared in the KB");
  };
  for (const auto& r : pack.prototypes) {
    check_category(r.category, r.id);
    for (const auto& a : r.pattern) {
      if (a.kind == AtomKind::WordAttr && !kb.attr_index(a.attribute))
        throw RuleError("rule " + r.id + ": attribute '" + a.attribute +
                        "' not declared in the KB");
      if (a.kind == AtomKind::KnownMention) check_category(a.category, r.id);
    }
  }
  for (const auto& r : pack.contexts) {
    if (!kb.attr_index(r.trigger))
      throw RuleError("rule " + r.id + ": trigger attribute '" + r.trigger +
                      "' not declared in the KB");
    if (!r.category.empty() && r.predicate.empty())
      check_category(r.category, r.id);
  }
}

}  // namespace nomen

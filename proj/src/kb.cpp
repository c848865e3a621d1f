#include "nomen/kb.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nomen/text.hpp"

namespace nomen {

using json = nlohmann::json;

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations)
    out << v.check << " " << v.entity << ": " << v.message << "\n";
  return out.str();
}

std::optional<uint32_t> KnowledgeBase::attr_index(std::string_view name) const {
  auto it = attr_by_name_.find(std::string(name));
  if (it == attr_by_name_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeBase::is_category(uint32_t attr) const {
  return attr < attributes_.size() &&
         attributes_[attr].kind == AttrKind::Category;
}

std::optional<WordId> KnowledgeBase::resolve_exact(
    std::string_view surface) const {
  auto it = word_by_surface_.find(std::string(surface));
  if (it == word_by_surface_.end()) return std::nullopt;
  return it->second;
}

std::optional<WordId> KnowledgeBase::resolve_folded(
    std::string_view surface) const {
  auto it = word_by_folded_.find(case_fold(surface));
  if (it == word_by_folded_.end()) return std::nullopt;
  return it->second;
}

const std::vector<FormId>* KnowledgeBase::find_key(const NormKey& key) const {
  auto it = form_index_.find(key);
  if (it == form_index_.end()) return nullptr;
  return &it->second;
}

std::optional<RefId> KnowledgeBase::ref_index(std::string_view id) const {
  auto it = ref_by_id_.find(std::string(id));
  if (it == ref_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<FormId> KnowledgeBase::form_index_of(std::string_view id) const {
  auto it = form_by_id_.find(std::string(id));
  if (it == form_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<WordId> KnowledgeBase::word_index_of(std::string_view id) const {
  auto it = word_by_id_.find(std::string(id));
  if (it == word_by_id_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeBase::word_has_attr(WordId w, uint32_t attr) const {
  const auto& a = words_[w].attrs;
  return std::binary_search(a.begin(), a.end(), attr);
}

bool KnowledgeBase::ref_has_attr(RefId r, uint32_t attr) const {
  const auto& a = refs_[r].attrs;
  return std::binary_search(a.begin(), a.end(), attr);
}

// ---------------------------------------------------------------------------
// Builder

void KbBuilder::header(std::vector<std::string> categories) {
  for (auto& c : categories) {
    if (std::find(categories_.begin(), categories_.end(), c) ==
        categories_.end())
      categories_.push_back(std::move(c));
  }
}

void KbBuilder::attribute(std::string name, AttrKind kind) {
  attrs_.push_back({std::move(name), kind});
}

void KbBuilder::word(std::string id, std::string surface,
                     std::vector<std::string> attrs) {
  words_.push_back({std::move(id), std::move(surface), std::move(attrs)});
}

void KbBuilder::equiv(std::string id, std::vector<std::string> members) {
  equivs_.push_back({std::move(id), std::move(members)});
}

void KbBuilder::form(std::string id, std::string ref_id,
                     std::vector<std::string> word_ids) {
  forms_.push_back({std::move(id), std::move(ref_id), std::move(word_ids)});
}

void KbBuilder::reference(std::string id, std::string category,
                          std::string canonical_form_id,
                          std::vector<std::string> attrs, uint32_t rank) {
  refs_.push_back({std::move(id), std::move(category),
                   std::move(canonical_form_id), std::move(attrs), rank});
}

void KbBuilder::homonym(std::string a, std::string b) {
  homonyms_.emplace_back(std::move(a), std::move(b));
}

KnowledgeBase KbBuilder::build(bool strict) const {
  KnowledgeBase kb;
  kb.categories_ = categories_;

  for (const auto& a : attrs_) {
    if (kb.attr_by_name_.count(a.name))
      throw LoadError("duplicate attribute '" + a.name + "'");
    kb.attr_by_name_[a.name] = static_cast<uint32_t>(kb.attributes_.size());
    kb.attributes_.push_back(a);
  }
  // Header categories without an explicit attribute record are declared
  // implicitly.
  for (const auto& c : categories_) {
    if (!kb.attr_by_name_.count(c)) {
      kb.attr_by_name_[c] = static_cast<uint32_t>(kb.attributes_.size());
      kb.attributes_.push_back({c, AttrKind::Category});
    }
  }

  auto attr_of = [&](const std::string& name,
                     const std::string& owner) -> uint32_t {
    auto it = kb.attr_by_name_.find(name);
    if (it == kb.attr_by_name_.end())
      throw LoadError("dangling attribute '" + name + "' in " + owner);
    return it->second;
  };

  for (const auto& w : words_) {
    if (kb.word_by_id_.count(w.id))
      throw LoadError("duplicate word id '" + w.id + "'");
    Word word;
    word.id = w.id;
    word.surface = w.surface;
    for (const auto& a : w.attrs) word.attrs.push_back(attr_of(a, w.id));
    std::sort(word.attrs.begin(), word.attrs.end());
    word.attrs.erase(std::unique(word.attrs.begin(), word.attrs.end()),
                     word.attrs.end());
    WordId wid = static_cast<WordId>(kb.words_.size());
    kb.word_by_id_[w.id] = wid;
    if (kb.word_by_surface_.count(w.surface))
      throw LoadError("duplicate word surface '" + w.surface + "'");
    kb.word_by_surface_[w.surface] = wid;
    kb.word_by_folded_.emplace(case_fold(w.surface), wid);  // first wins
    kb.words_.push_back(std::move(word));
  }

  for (const auto& e : equivs_) {
    EquivClass cls;
    cls.id = e.id;
    uint32_t cid = static_cast<uint32_t>(kb.equivs_.size());
    for (const auto& m : e.members) {
      auto it = kb.word_by_id_.find(m);
      if (it == kb.word_by_id_.end())
        throw LoadError("dangling word id '" + m + "' in equiv " + e.id);
      if (kb.words_[it->second].equiv != kNone)
        throw LoadError("word '" + m + "' belongs to two equiv classes");
      kb.words_[it->second].equiv = cid;
      cls.members.push_back(it->second);
    }
    std::sort(cls.members.begin(), cls.members.end());
    kb.equivs_.push_back(std::move(cls));
  }

  for (WordId w = 0; w < kb.words_.size(); ++w) {
    kb.words_[w].norm =
        kb.words_[w].equiv == kNone
            ? w
            : static_cast<NormId>(kb.words_.size() + kb.words_[w].equiv);
  }

  // Ids first so forms and references can cite each other in any order.
  for (const auto& f : forms_) {
    if (kb.form_by_id_.count(f.id))
      throw LoadError("duplicate form id '" + f.id + "'");
    FormId next = static_cast<FormId>(kb.form_by_id_.size());
    kb.form_by_id_[f.id] = next;
  }
  for (const auto& r : refs_) {
    if (kb.ref_by_id_.count(r.id))
      throw LoadError("duplicate reference id '" + r.id + "'");
    RefId next = static_cast<RefId>(kb.ref_by_id_.size());
    kb.ref_by_id_[r.id] = next;
  }

  for (const auto& f : forms_) {
    Form form;
    form.id = f.id;
    if (f.words.empty()) throw LoadError("form '" + f.id + "' has no words");
    for (const auto& wid : f.words) {
      auto it = kb.word_by_id_.find(wid);
      if (it == kb.word_by_id_.end())
        throw LoadError("dangling word id '" + wid + "' in form " + f.id);
      form.words.push_back(it->second);
      form.key.push_back(kb.words_[it->second].norm);
    }
    auto rit = kb.ref_by_id_.find(f.ref);
    if (rit == kb.ref_by_id_.end())
      throw LoadError("dangling reference id '" + f.ref + "' in form " + f.id);
    form.owner = rit->second;
    kb.form_index_[form.key].push_back(
        static_cast<FormId>(kb.forms_.size()));
    kb.forms_.push_back(std::move(form));
  }

  for (const auto& r : refs_) {
    Reference ref;
    ref.id = r.id;
    ref.category = attr_of(r.category, r.id);
    for (const auto& a : r.attrs) ref.attrs.push_back(attr_of(a, r.id));
    std::sort(ref.attrs.begin(), ref.attrs.end());
    ref.attrs.erase(std::unique(ref.attrs.begin(), ref.attrs.end()),
                    ref.attrs.end());
    ref.rank = r.rank;
    auto fit = kb.form_by_id_.find(r.canonical);
    if (fit == kb.form_by_id_.end())
      throw LoadError("dangling form id '" + r.canonical + "' in reference " +
                      r.id);
    ref.canonical = fit->second;
    kb.refs_.push_back(std::move(ref));
  }

  for (FormId f = 0; f < kb.forms_.size(); ++f)
    kb.refs_[kb.forms_[f].owner].forms.push_back(f);

  for (const auto& [a, b] : homonyms_) {
    auto ia = kb.ref_by_id_.find(a);
    auto ib = kb.ref_by_id_.find(b);
    if (ia == kb.ref_by_id_.end() || ib == kb.ref_by_id_.end())
      throw LoadError("dangling reference id in homonym record '" + a + "'/'" +
                      b + "'");
    kb.refs_[ia->second].homonyms.push_back(ib->second);
    kb.refs_[ib->second].homonyms.push_back(ia->second);
  }
  for (auto& r : kb.refs_) {
    std::sort(r.homonyms.begin(), r.homonyms.end());
    r.homonyms.erase(std::unique(r.homonyms.begin(), r.homonyms.end()),
                     r.homonyms.end());
  }

  if (strict) {
    ValidationReport report = validate_kb(kb);
    for (const auto& v : report.violations) {
      if (v.check == "shared-form-no-homonym")
        throw LoadError(v.check + " " + v.entity + ": " + v.message);
    }
  }
  return kb;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_kb(const KnowledgeBase& kb) {
  ValidationReport report;
  auto flag = [&](std::string check, std::string entity, std::string msg) {
    report.violations.push_back(
        {std::move(check), std::move(entity), std::move(msg)});
  };

  for (const auto& e : kb.equivs()) {
    if (e.members.size() < 2)
      flag("equiv-underpopulated", e.id,
           "equivalence class has fewer than two members");
  }

  for (const auto& w : kb.words()) {
    if (w.surface.empty() ||
        w.surface.find_first_of(" \t\n\r") != std::string::npos)
      flag("word-surface", w.id, "surface empty or contains whitespace");
  }

  const auto& cats = kb.categories();
  for (const auto& a : kb.attributes()) {
    if (a.kind == AttrKind::Category &&
        std::find(cats.begin(), cats.end(), a.name) == cats.end())
      flag("attr-kind-category-undeclared", a.name,
           "category attribute missing from header category list");
  }

  const auto& refs = kb.references();
  for (RefId r = 0; r < refs.size(); ++r) {
    const Reference& ref = refs[r];
    if (!kb.is_category(ref.category))
      flag("category-kind", ref.id,
           "reference category is not a category attribute");
    if (ref.canonical == kNone ||
        kb.forms()[ref.canonical].owner != r)
      flag("canonical-owner", ref.id,
           "canonical form is not owned by the reference");
    for (RefId h : ref.homonyms) {
      const auto& back = refs[h].homonyms;
      if (!std::binary_search(back.begin(), back.end(), r))
        flag("homonym-asymmetry", ref.id,
             "homonym link to " + refs[h].id + " is not symmetric");
    }
  }

  // References sharing a normalized form key must be linked as homonyms.
  std::map<NormKey, std::vector<RefId>> by_key;
  for (const auto& f : kb.forms()) {
    auto& owners = by_key[f.key];
    if (std::find(owners.begin(), owners.end(), f.owner) == owners.end())
      owners.push_back(f.owner);
  }
  for (const auto& [key, owners] : by_key) {
    for (size_t i = 0; i < owners.size(); ++i) {
      for (size_t j = i + 1; j < owners.size(); ++j) {
        const auto& h = refs[owners[i]].homonyms;
        if (!std::binary_search(h.begin(), h.end(), owners[j]))
          flag("shared-form-no-homonym",
               refs[owners[i]].id + "/" + refs[owners[j]].id,
               "references share a form without a homonym link");
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Line-JSON records

namespace {

struct RecordSet {
  std::vector<std::string> categories;
  // Ordered by first appearance; later records with the same id replace
  // the payload (multi-file overlay).
  template <typename T>
  struct ById {
    std::vector<T> items;
    std::unordered_map<std::string, size_t> index;
    void put(const std::string& id, T item, bool dup_in_file) {
      auto it = index.find(id);
      if (it == index.end()) {
        index[id] = items.size();
        items.push_back(std::move(item));
      } else if (dup_in_file) {
        throw LoadError("duplicate id '" + id + "' in one file");
      } else {
        items[it->second] = std::move(item);
      }
    }
  };
  ById<json> attributes, words, equivs, forms, refs;
  std::set<std::pair<std::string, std::string>> homonyms;
};

std::string str_field(const json& j, const char* field, int line) {
  if (!j.contains(field) || !j[field].is_string())
    throw LoadError("line " + std::to_string(line) + ": missing string field '" +
                    std::string(field) + "'");
  return j[field].get<std::string>();
}

std::vector<std::string> str_array(const json& j, const char* field, int line,
                                   bool required) {
  std::vector<std::string> out;
  if (!j.contains(field)) {
    if (required)
      throw LoadError("line " + std::to_string(line) +
                      ": missing array field '" + std::string(field) + "'");
    return out;
  }
  if (!j[field].is_array())
    throw LoadError("line " + std::to_string(line) + ": field '" +
                    std::string(field) + "' is not an array");
  for (const auto& v : j[field]) {
    if (!v.is_string())
      throw LoadError("line " + std::to_string(line) + ": field '" +
                      std::string(field) + "' has a non-string element");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void parse_into(std::istream& in, RecordSet& set) {
  std::string line;
  int lineno = 0;
  std::set<std::string> seen_this_file;
  // True when this (kind, id) already appeared in the current file.
  auto track = [&](const std::string& kind, const std::string& id) {
    return !seen_this_file.insert(kind + "\x1f" + id).second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw LoadError("line " + std::to_string(lineno) + ": parse error: " +
                      e.what());
    }
    std::string kind = str_field(j, "kind", lineno);
    if (kind == "header") {
      for (auto& c : str_array(j, "categories", lineno, true)) {
        if (std::find(set.categories.begin(), set.categories.end(), c) ==
            set.categories.end())
          set.categories.push_back(c);
      }
    } else if (kind == "attribute") {
      std::string name = str_field(j, "name", lineno);
      set.attributes.put(name, j, track(kind, name));
    } else if (kind == "word") {
      std::string id = str_field(j, "id", lineno);
      set.words.put(id, j, track(kind, id));
    } else if (kind == "equiv") {
      std::string id = str_field(j, "id", lineno);
      set.equivs.put(id, j, track(kind, id));
    } else if (kind == "form") {
      std::string id = str_field(j, "id", lineno);
      set.forms.put(id, j, track(kind, id));
    } else if (kind == "reference") {
      std::string id = str_field(j, "id", lineno);
      set.refs.put(id, j, track(kind, id));
    } else if (kind == "homonym") {
      auto refs = str_array(j, "refs", lineno, true);
      if (refs.size() != 2)
        throw LoadError("line " + std::to_string(lineno) +
                        ": homonym record needs exactly two refs");
      if (refs[0] > refs[1]) std::swap(refs[0], refs[1]);
      set.homonyms.insert({refs[0], refs[1]});
    } else {
      throw LoadError("line " + std::to_string(lineno) +
                      ": unknown record kind '" + kind + "'");
    }
  }
}

AttrKind parse_attr_kind(const std::string& s, const std::string& name) {
  if (s == "category") return AttrKind::Category;
  if (s == "word-marker") return AttrKind::WordMarker;
  if (s == "reference-property") return AttrKind::ReferenceProperty;
  throw LoadError("attribute '" + name + "': unknown kind '" + s + "'");
}

const char* attr_kind_name(AttrKind k) {
  switch (k) {
    case AttrKind::Category: return "category";
    case AttrKind::WordMarker: return "word-marker";
    case AttrKind::ReferenceProperty: return "reference-property";
  }
  return "?";
}

KnowledgeBase build_from_records(const RecordSet& set) {
  KbBuilder b;
  b.header(set.categories);
  for (const auto& j : set.attributes.items) {
    std::string name = j["name"].get<std::string>();
    b.attribute(name, parse_attr_kind(str_field(j, "type", 0), name));
  }
  for (const auto& j : set.words.items)
    b.word(str_field(j, "id", 0), str_field(j, "surface", 0),
           str_array(j, "attributes", 0, false));
  for (const auto& j : set.equivs.items)
    b.equiv(str_field(j, "id", 0), str_array(j, "members", 0, true));
  for (const auto& j : set.forms.items)
    b.form(str_field(j, "id", 0), str_field(j, "ref", 0),
           str_array(j, "words", 0, true));
  for (const auto& j : set.refs.items) {
    uint32_t rank = kDefaultRank;
    if (j.contains("rank")) rank = j["rank"].get<uint32_t>();
    b.reference(str_field(j, "id", 0), str_field(j, "category", 0),
                str_field(j, "canonical", 0),
                str_array(j, "attributes", 0, false), rank);
  }
  for (const auto& [a, bb] : set.homonyms) b.homonym(a, bb);
  return b.build(/*strict=*/true);
}

}  // namespace

KnowledgeBase load_kb(std::istream& in) {
  RecordSet set;
  parse_into(in, set);
  return build_from_records(set);
}

KnowledgeBase load_kb(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return load_kb(in);
}

KnowledgeBase load_kb_files(const std::vector<std::string>& paths) {
  RecordSet set;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw LoadError("cannot open KB file '" + p + "'");
    try {
      parse_into(in, set);
    } catch (const LoadError& e) {
      throw LoadError(p + ": " + e.what());
    }
  }
  return build_from_records(set);
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  json header = {{"kind", "header"}, {"format", 1}};
  header["categories"] = kb.categories();
  out << header.dump() << "\n";

  std::vector<const AttributeDef*> attrs;
  for (const auto& a : kb.attributes()) attrs.push_back(&a);
  std::sort(attrs.begin(), attrs.end(),
            [](auto* x, auto* y) { return x->name < y->name; });
  for (auto* a : attrs) {
    json j = {{"kind", "attribute"},
              {"name", a->name},
              {"type", attr_kind_name(a->kind)}};
    out << j.dump() << "\n";
  }

  auto sorted_indices = [](size_t n, auto less) {
    std::vector<uint32_t> idx(n);
    for (uint32_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), less);
    return idx;
  };

  const auto& words = kb.words();
  for (uint32_t i : sorted_indices(words.size(), [&](uint32_t a, uint32_t b) {
         return words[a].id < words[b].id;
       })) {
    json j = {{"kind", "word"}, {"id", words[i].id},
              {"surface", words[i].surface}};
    if (!words[i].attrs.empty()) {
      std::vector<std::string> names;
      for (uint32_t a : words[i].attrs)
        names.push_back(kb.attributes()[a].name);
      std::sort(names.begin(), names.end());
      j["attributes"] = names;
    }
    out << j.dump() << "\n";
  }

  const auto& equivs = kb.equivs();
  for (uint32_t i : sorted_indices(equivs.size(), [&](uint32_t a, uint32_t b) {
         return equivs[a].id < equivs[b].id;
       })) {
    std::vector<std::string> members;
    for (WordId w : equivs[i].members) members.push_back(words[w].id);
    std::sort(members.begin(), members.end());
    json j = {{"kind", "equiv"}, {"id", equivs[i].id}, {"members", members}};
    out << j.dump() << "\n";
  }

  const auto& forms = kb.forms();
  const auto& refs = kb.references();
  for (uint32_t i : sorted_indices(forms.size(), [&](uint32_t a, uint32_t b) {
         return forms[a].id < forms[b].id;
       })) {
    std::vector<std::string> ws;
    for (WordId w : forms[i].words) ws.push_back(words[w].id);
    json j = {{"kind", "form"},
              {"id", forms[i].id},
              {"ref", refs[forms[i].owner].id},
              {"words", ws}};
    out << j.dump() << "\n";
  }

  for (uint32_t i : sorted_indices(refs.size(), [&](uint32_t a, uint32_t b) {
         return refs[a].id < refs[b].id;
       })) {
    json j = {{"kind", "reference"},
              {"id", refs[i].id},
              {"category", kb.attributes()[refs[i].category].name},
              {"canonical", forms[refs[i].canonical].id}};
    if (!refs[i].attrs.empty()) {
      std::vector<std::string> names;
      for (uint32_t a : refs[i].attrs) names.push_back(kb.attributes()[a].name);
      std::sort(names.begin(), names.end());
      j["attributes"] = names;
    }
    if (refs[i].rank != kDefaultRank) j["rank"] = refs[i].rank;
    out << j.dump() << "\n";
  }

  std::set<std::pair<std::string, std::string>> pairs;
  for (RefId r = 0; r < refs.size(); ++r) {
    for (RefId h : refs[r].homonyms) {
      std::string a = refs[r].id, b = refs[h].id;
      if (a > b) std::swap(a, b);
      pairs.insert({a, b});
    }
  }
  for (const auto& [a, b] : pairs) {
    json j = {{"kind", "homonym"}, {"refs", {a, b}}};
    out << j.dump() << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DocumentKb

uint32_t DocumentKb::word_count() const {
  return static_cast<uint32_t>(base_.words().size() + words_.size());
}
uint32_t DocumentKb::form_count() const {
  return static_cast<uint32_t>(base_.forms().size() + forms_.size());
}
uint32_t DocumentKb::ref_count() const {
  return static_cast<uint32_t>(base_.references().size() + refs_.size());
}

const Word& DocumentKb::word(WordId w) const {
  uint32_t n = static_cast<uint32_t>(base_.words().size());
  return w < n ? base_.words()[w] : words_[w - n];
}

const Form& DocumentKb::form(FormId f) const {
  uint32_t n = static_cast<uint32_t>(base_.forms().size());
  return f < n ? base_.forms()[f] : forms_[f - n];
}

const Reference& DocumentKb::ref(RefId r) const {
  uint32_t n = static_cast<uint32_t>(base_.references().size());
  return r < n ? base_.references()[r] : refs_[r - n].core;
}

bool DocumentKb::is_overlay_ref(RefId r) const {
  return r >= base_.references().size();
}

std::optional<WordId> DocumentKb::resolve_exact(
    std::string_view surface) const {
  auto it = word_by_surface_.find(std::string(surface));
  if (it != word_by_surface_.end()) return it->second;
  return base_.resolve_exact(surface);
}

std::optional<WordId> DocumentKb::resolve(std::string_view surface) const {
  if (auto w = resolve_exact(surface)) return w;
  auto it = word_by_folded_.find(case_fold(surface));
  if (it != word_by_folded_.end()) return it->second;
  return base_.resolve_folded(surface);
}

NormId DocumentKb::norm_of(WordId w) const {
  uint32_t n = static_cast<uint32_t>(base_.words().size());
  if (w < n) return base_.norm_of(w);
  return base_.norm_limit() + (w - n);
}

bool DocumentKb::word_has_attr(WordId w, std::string_view attr) const {
  auto idx = base_.attr_index(attr);
  if (!idx) return false;
  uint32_t n = static_cast<uint32_t>(base_.words().size());
  if (w < n) return base_.word_has_attr(w, *idx);
  const auto& a = words_[w - n].attrs;
  return std::binary_search(a.begin(), a.end(), *idx);
}

bool DocumentKb::ref_has_attr(RefId r, std::string_view attr) const {
  auto idx = base_.attr_index(attr);
  if (!idx) return false;
  if (!is_overlay_ref(r)) return base_.ref_has_attr(r, *idx);
  return false;  // overlay references carry no attributes
}

std::string DocumentKb::category_of(RefId r) const {
  if (is_overlay_ref(r)) {
    return refs_[r - base_.references().size()].category;
  }
  uint32_t cat = base_.references()[r].category;
  if (cat == kNone || !base_.is_category(cat)) return "";
  return base_.attributes()[cat].name;
}

std::vector<RefId> DocumentKb::lookup(const NormKey& key) const {
  std::vector<RefId> out;
  if (const auto* base_forms = base_.find_key(key)) {
    for (FormId f : *base_forms) out.push_back(base_.forms()[f].owner);
  }
  auto it = form_index_.find(key);
  if (it != form_index_.end()) {
    for (FormId f : it->second) out.push_back(forms_[f].owner);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<RefId> DocumentKb::find_ref(const std::string& id) const {
  auto it = ref_by_id_.find(id);
  if (it != ref_by_id_.end()) return it->second;
  return base_.ref_index(id);
}

std::vector<RefId> DocumentKb::homonyms_of(RefId r) const {
  std::vector<RefId> out;
  if (!is_overlay_ref(r)) out = base_.references()[r].homonyms;
  auto it = extra_homonyms_.find(r);
  if (it != extra_homonyms_.end())
    out.insert(out.end(), it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WordId DocumentKb::add_word(std::string surface) {
  if (auto w = resolve(surface)) return *w;
  Word w;
  w.id = "doc:w:" + surface;
  w.surface = surface;
  WordId wid = static_cast<WordId>(base_.words().size() + words_.size());
  word_by_surface_[surface] = wid;
  word_by_folded_.emplace(case_fold(surface), wid);
  words_.push_back(std::move(w));
  return wid;
}

FormId DocumentKb::add_form(RefId owner,
                            const std::vector<std::string>& surfaces) {
  NormKey key;
  std::vector<WordId> word_ids;
  for (const auto& s : surfaces) {
    WordId w = add_word(s);
    word_ids.push_back(w);
    key.push_back(norm_of(w));
  }

  // Existing base form of this owner: nothing to add.
  if (const auto* base_forms = base_.find_key(key)) {
    for (FormId f : *base_forms)
      if (base_.forms()[f].owner == owner) return f;
  }
  auto it = form_index_.find(key);
  if (it != form_index_.end()) {
    for (FormId f : it->second)
      if (forms_[f].owner == owner)
        return static_cast<FormId>(base_.forms().size() + f);
  }

  // Colliding owners become document-scoped homonyms of the new owner.
  std::vector<RefId> others = lookup(key);
  for (RefId o : others) {
    if (o == owner) continue;
    extra_homonyms_[owner].push_back(o);
    extra_homonyms_[o].push_back(owner);
  }

  Form form;
  form.id = "doc:f:" + std::to_string(forms_.size());
  form.words = std::move(word_ids);
  form.owner = owner;
  form.key = key;
  FormId local = static_cast<FormId>(forms_.size());
  form_index_[key].push_back(local);
  forms_.push_back(std::move(form));
  FormId global = static_cast<FormId>(base_.forms().size() + local);
  uint32_t base_refs = static_cast<uint32_t>(base_.references().size());
  if (owner >= base_refs) {
    auto& core = refs_[owner - base_refs].core;
    core.forms.push_back(global);
    if (core.canonical == kNone) core.canonical = global;
  }
  return global;
}

RefId DocumentKb::extend(const std::string& id, const NewRef& proto,
                         const std::vector<std::vector<std::string>>& forms) {
  RefId rid;
  auto it = ref_by_id_.find(id);
  if (it != ref_by_id_.end()) {
    rid = it->second;
  } else {
    OverlayRef r;
    r.core.id = id;
    r.core.rank = proto.rank;
    r.category = proto.category;
    rid = static_cast<RefId>(base_.references().size() + refs_.size());
    ref_by_id_[id] = rid;
    refs_.push_back(std::move(r));
  }
  for (const auto& f : forms) add_form(rid, f);
  return rid;
}

void DocumentKb::set_category(RefId overlay_ref, const std::string& category) {
  if (!is_overlay_ref(overlay_ref)) return;  // base is immutable
  refs_[overlay_ref - base_.references().size()].category = category;
}

}  // namespace nomen

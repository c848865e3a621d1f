#pragma once
// Shared test support: independent oracles (brute-force form matcher,
// exhaustive acronym skip-subset enumeration), random KB/text generators,
// and KB comparison for round-trip checks.
//
// The oracles deliberately re-derive the matching contracts with their own
// code paths; they must not call into the implementations they check.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nomen/kb.hpp"
#include "nomen/matcher.hpp"
#include "nomen/mention.hpp"
#include "nomen/rules.hpp"
#include "nomen/text.hpp"
#include "nomen/tokenizer.hpp"

namespace nomen::testing {

inline std::string data_path(const std::string& name) {
  return std::string(NOMEN_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline const KnowledgeBase& sample_kb() {
  static KnowledgeBase kb = [] {
    std::ifstream in(data_path("kb.jsonl"));
    return load_kb(in);
  }();
  return kb;
}

inline const RulePack& sample_rules() {
  static RulePack pack = load_rules_file(data_path("rules.jsonl"));
  return pack;
}

// ---------------------------------------------------------------------------
// Brute-force matcher oracle: every form at every position, longest match
// wins, equal lengths merge, matched tokens are consumed.

inline uint32_t oracle_align(const Document& doc, const DocumentKb& dkb,
                             const NormKey& key, uint32_t pos, uint32_t to) {
  uint32_t j = pos;
  for (size_t k = 0; k < key.size(); ++k) {
    if (j < to) {
      auto w = dkb.resolve(doc.tokens[j].surface);
      if (w && dkb.norm_of(*w) == key[k]) {
        ++j;
        continue;
      }
    }
    if (k > 0 && j < to && is_hyphen_token(doc.tokens[j]) && j + 1 < to) {
      auto w = dkb.resolve(doc.tokens[j + 1].surface);
      if (w && dkb.norm_of(*w) == key[k]) {
        j += 2;
        continue;
      }
    }
    return 0;
  }
  return j - pos;
}

inline std::vector<Mention> brute_force_match(const Document& doc,
                                              const DocumentKb& dkb) {
  const uint32_t n = static_cast<uint32_t>(doc.tokens.size());
  struct Entry {
    NormKey key;
    RefId owner;
  };
  std::vector<Entry> all;
  for (const Form& f : dkb.base().forms()) all.push_back({f.key, f.owner});
  for (const Form& f : dkb.overlay_forms()) all.push_back({f.key, f.owner});

  auto has_cap = [&](uint32_t b, uint32_t e) {
    for (uint32_t t = b; t < e; ++t)
      if (is_capitalized(doc.tokens[t])) return true;
    return false;
  };

  std::vector<Mention> out;
  uint32_t pos = 0;
  while (pos < n) {
    uint32_t best = 0;
    std::set<RefId> cands;
    for (const Entry& e : all) {
      uint32_t len = oracle_align(doc, dkb, e.key, pos, n);
      if (len == 0 || !has_cap(pos, pos + len)) continue;
      if (len > best) {
        best = len;
        cands.clear();
      }
      if (len == best) cands.insert(e.owner);
    }
    if (best > 0) {
      Mention m;
      m.begin = pos;
      m.end = pos + best;
      m.candidates.assign(cands.begin(), cands.end());
      out.push_back(std::move(m));
      pos += best;
    } else {
      ++pos;
    }
  }
  return out;
}

inline bool same_matches(const std::vector<Mention>& a,
                         const std::vector<Mention>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].begin != b[i].begin || a[i].end != b[i].end ||
        a[i].candidates != b[i].candidates)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive acronym oracle: enumerate all skip subsets over skippable
// words; a non-skipped word must contribute its initial letter.

inline bool acronym_oracle(const std::string& acronym,
                           const std::vector<std::string>& words,
                           const DocumentKb& dkb) {
  std::vector<char32_t> letters;
  {
    size_t i = 0;
    while (i < acronym.size()) {
      Codepoint c = decode_utf8(acronym, i);
      if (is_letter_cp(c.value)) letters.push_back(acronym_fold_cp(c.value));
      i += c.length;
    }
  }
  if (letters.size() < 2 || words.empty()) return false;

  std::vector<char32_t> initials(words.size(), 0);
  std::vector<size_t> skippable;
  for (size_t i = 0; i < words.size(); ++i) {
    char32_t first = first_letter_cp(words[i]);
    if (first != 0) initials[i] = acronym_fold_cp(first);
    bool skip_ok = first == 0;
    if (!skip_ok) {
      auto w = dkb.resolve(words[i]);
      skip_ok = w && dkb.word_has_attr(*w, kAttrAcronymSkippable);
    }
    if (skip_ok) skippable.push_back(i);
  }
  if (skippable.size() > 20) return false;  // generators keep k small

  const size_t k = skippable.size();
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    std::vector<bool> skipped(words.size(), false);
    for (size_t b = 0; b < k; ++b)
      if (mask & (size_t{1} << b)) skipped[skippable[b]] = true;
    std::vector<char32_t> seq;
    bool feasible = true;
    for (size_t i = 0; i < words.size() && feasible; ++i) {
      if (skipped[i]) continue;
      if (initials[i] == 0)
        feasible = false;  // punctuation cannot contribute
      else
        seq.push_back(initials[i]);
    }
    if (feasible && seq == letters) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Random KBs and texts for the matcher equivalence property.

struct RandomKbCase {
  KnowledgeBase kb;
  std::string text;
};

inline RandomKbCase random_kb_case(uint32_t seed) {
  std::mt19937 rng(seed);
  auto pick = [&](uint32_t n) { return rng() % n; };

  static const std::vector<std::string> caps = {
      "Alpha", "Bravo", "Cobra", "Delta",  "Estrel", "Fargo", "Golfo",
      "Haldi", "Indra", "Jura",  "Kairos", "Lindo",  "Mango", "Nabir",
      "Orlov", "Presto", "Quero", "Rastan", "Sintra", "Tolosa"};
  static const std::vector<std::string> lows = {"dos", "mel", "tak", "rin",
                                                "sol"};

  uint32_t n_caps = 4 + pick(12);
  uint32_t n_lows = 1 + pick(4);
  std::vector<std::string> surfaces(caps.begin(), caps.begin() + n_caps);
  surfaces.insert(surfaces.end(), lows.begin(), lows.begin() + n_lows);

  KbBuilder b;
  b.header({"ca", "cb", "cc"});
  std::map<std::string, std::string> word_id;
  for (const auto& s : surfaces) {
    std::string id = "w" + std::to_string(word_id.size());
    word_id[s] = id;
    b.word(id, s);
  }

  // Same-case equivalence classes; remember each word's representative.
  std::map<std::string, std::string> rep;  // word id -> class id
  uint32_t n_classes = pick(3);
  uint32_t next_cap = 0;
  for (uint32_t c = 0; c < n_classes && next_cap + 1 < n_caps; ++c) {
    uint32_t size = 2 + pick(2);
    std::vector<std::string> members;
    std::string cls = "eq" + std::to_string(c);
    for (uint32_t i = 0; i < size && next_cap < n_caps; ++i, ++next_cap) {
      members.push_back(word_id[surfaces[next_cap]]);
      rep[word_id[surfaces[next_cap]]] = cls;
    }
    if (members.size() >= 2)
      b.equiv(cls, members);
    else
      rep.erase(members[0]);
  }

  auto norm_name = [&](const std::string& wid) {
    auto it = rep.find(wid);
    return it == rep.end() ? wid : it->second;
  };

  uint32_t n_refs = 2 + pick(8);
  uint32_t n_forms = n_refs + pick(40);
  std::vector<std::vector<std::string>> form_words(n_forms);
  std::vector<uint32_t> form_ref(n_forms);
  std::map<std::vector<std::string>, std::set<uint32_t>> by_key;
  for (uint32_t f = 0; f < n_forms; ++f) {
    uint32_t len = 1 + pick(4);
    std::vector<std::string> ws, key;
    for (uint32_t i = 0; i < len; ++i) {
      const std::string& s = surfaces[pick(static_cast<uint32_t>(surfaces.size()))];
      ws.push_back(word_id[s]);
      key.push_back(norm_name(word_id[s]));
    }
    uint32_t r = f < n_refs ? f : pick(n_refs);
    form_words[f] = ws;
    form_ref[f] = r;
    by_key[key].insert(r);
    b.form("f" + std::to_string(f), "r" + std::to_string(r), ws);
  }
  static const char* cats[] = {"ca", "cb", "cc"};
  for (uint32_t r = 0; r < n_refs; ++r) {
    uint32_t first_form = r;  // each ref owns at least its seed form
    b.reference("r" + std::to_string(r), cats[pick(3)],
                "f" + std::to_string(first_form), {}, pick(5));
  }
  // Shared keys require homonym links.
  std::set<std::pair<uint32_t, uint32_t>> linked;
  for (const auto& [key, refs] : by_key) {
    for (auto i = refs.begin(); i != refs.end(); ++i) {
      for (auto j = std::next(i); j != refs.end(); ++j) {
        if (linked.insert({*i, *j}).second)
          b.homonym("r" + std::to_string(*i), "r" + std::to_string(*j));
      }
    }
  }

  RandomKbCase out{b.build(true), ""};

  uint32_t n_tokens = 1 + pick(200);
  std::string text;
  for (uint32_t t = 0; t < n_tokens; ++t) {
    if (t) text += " ";
    uint32_t roll = pick(100);
    if (roll < 55) {
      text += surfaces[pick(static_cast<uint32_t>(surfaces.size()))];
    } else if (roll < 65) {
      // case variant
      std::string s = surfaces[pick(static_cast<uint32_t>(surfaces.size()))];
      if (is_upper_cp(first_letter_cp(s)))
        text += case_fold(s);
      else {
        std::string up = s;
        up[0] = static_cast<char>(up[0] - 0x20);
        text += up;
      }
    } else if (roll < 75) {
      text += "-";
    } else if (roll < 85) {
      text += "zz" + std::to_string(pick(9));
    } else if (roll < 92) {
      text += ".";
    } else {
      text += ",";
    }
  }
  out.text = text;
  return out;
}

// ---------------------------------------------------------------------------
// Order-insensitive KB equality for the serialization round trip.

inline bool kb_equal(const KnowledgeBase& a, const KnowledgeBase& b,
                     std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.categories() != b.categories()) return fail("categories");

  std::map<std::string, std::pair<AttrKind, int>> attrs_a, attrs_b;
  for (const auto& x : a.attributes()) attrs_a[x.name] = {x.kind, 0};
  for (const auto& x : b.attributes()) attrs_b[x.name] = {x.kind, 0};
  if (attrs_a != attrs_b) return fail("attributes");

  auto word_sig = [](const KnowledgeBase& kb) {
    std::map<std::string, std::string> sig;
    for (const auto& w : kb.words()) {
      std::string s = w.surface + "|";
      std::vector<std::string> names;
      for (uint32_t x : w.attrs) names.push_back(kb.attributes()[x].name);
      std::sort(names.begin(), names.end());
      for (const auto& nm : names) s += nm + ",";
      s += "|" + (w.equiv == kNone ? std::string("-")
                                   : kb.equivs()[w.equiv].id);
      sig[w.id] = s;
    }
    return sig;
  };
  if (word_sig(a) != word_sig(b)) return fail("words");

  auto form_sig = [](const KnowledgeBase& kb) {
    std::map<std::string, std::string> sig;
    for (const auto& f : kb.forms()) {
      std::string s;
      for (WordId w : f.words) s += kb.words()[w].id + " ";
      s += "|" + kb.references()[f.owner].id;
      sig[f.id] = s;
    }
    return sig;
  };
  if (form_sig(a) != form_sig(b)) return fail("forms");

  auto ref_sig = [](const KnowledgeBase& kb) {
    std::map<std::string, std::string> sig;
    for (const auto& r : kb.references()) {
      std::string s = kb.attributes()[r.category].name + "|" +
                      kb.forms()[r.canonical].id + "|" +
                      std::to_string(r.rank) + "|";
      std::vector<std::string> names;
      for (uint32_t x : r.attrs) names.push_back(kb.attributes()[x].name);
      std::sort(names.begin(), names.end());
      for (const auto& nm : names) s += nm + ",";
      s += "|";
      std::vector<std::string> homs;
      for (RefId h : r.homonyms) homs.push_back(kb.references()[h].id);
      std::sort(homs.begin(), homs.end());
      for (const auto& h : homs) s += h + ",";
      sig[r.id] = s;
    }
    return sig;
  };
  if (ref_sig(a) != ref_sig(b)) return fail("references");
  return true;
}

}  // namespace nomen::testing

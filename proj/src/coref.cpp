#include "nomen/coref.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "nomen/matcher.hpp"
#include "nomen/text.hpp"
#include "nomen/unknown.hpp"

namespace nomen {

namespace {

struct AcroWord {
  char32_t initial = 0;  // folded; 0 when the token has no letter
  bool skippable = false;
};

bool backtrack(const std::vector<AcroWord>& words,
               const std::vector<char32_t>& letters, size_t wi, size_t li) {
  if (wi == words.size()) return li == letters.size();
  const AcroWord& w = words[wi];
  if (w.initial != 0 && li < letters.size() && letters[li] == w.initial &&
      backtrack(words, letters, wi + 1, li + 1))
    return true;
  if (w.skippable && backtrack(words, letters, wi + 1, li)) return true;
  return false;
}

std::vector<char32_t> folded_letters(std::string_view s) {
  std::vector<char32_t> out;
  size_t i = 0;
  while (i < s.size()) {
    Codepoint c = decode_utf8(s, i);
    if (is_letter_cp(c.value)) out.push_back(acronym_fold_cp(c.value));
    i += c.length;
  }
  return out;
}

}  // namespace

bool match_acronym_letters(const std::string& acronym,
                           const std::vector<std::string>& words,
                           const DocumentKb& dkb) {
  std::vector<char32_t> letters = folded_letters(acronym);
  if (letters.size() < 2 || words.empty()) return false;

  std::vector<AcroWord> infos;
  infos.reserve(words.size());
  for (const auto& w : words) {
    AcroWord info;
    char32_t first = first_letter_cp(w);
    if (first != 0) {
      info.initial = acronym_fold_cp(first);
      auto word = dkb.resolve(w);
      info.skippable = word && dkb.word_has_attr(*word, kAttrAcronymSkippable);
    } else {
      info.skippable = true;  // punctuation can always be jumped
    }
    infos.push_back(info);
  }
  return backtrack(infos, letters, 0, 0);
}

// ---------------------------------------------------------------------------
// Acronym definitions

namespace {

bool acronym_eligible(const Token& t) {
  if (t.case_class != CaseClass::AllCaps && t.case_class != CaseClass::Mixed)
    return false;
  int letters = 0;
  size_t i = 0;
  while (i < t.surface.size()) {
    Codepoint c = decode_utf8(t.surface, i);
    if (is_letter_cp(c.value)) {
      if (!is_upper_cp(c.value)) return false;
      ++letters;
    }
    i += c.length;
  }
  return letters >= 2;
}

bool token_skippable(const Document& doc, const DocumentKb& dkb, uint32_t t) {
  auto w = dkb.resolve(doc.tokens[t].surface);
  return w && dkb.word_has_attr(*w, kAttrAcronymSkippable);
}

bool window_token_allowed(const Document& doc, const DocumentKb& dkb,
                          uint32_t t) {
  const Token& tok = doc.tokens[t];
  if (is_capitalized(tok)) return true;
  if (tok.case_class == CaseClass::Lower) return true;  // "recherche", "de"
  if (tok.surface == "," || is_hyphen_token(tok)) return true;
  (void)dkb;
  return false;
}

std::vector<std::string> span_surfaces(const Document& doc, uint32_t b,
                                       uint32_t e) {
  std::vector<std::string> out;
  for (uint32_t t = b; t < e; ++t) out.push_back(doc.tokens[t].surface);
  return out;
}

bool has_letters(const std::string& s) { return first_letter_cp(s) != 0; }

// Word surfaces used as the overlay form of an expansion: tokens with
// letters or digits; commas and hyphens drop out.
std::vector<std::string> form_words(const Document& doc, uint32_t b,
                                    uint32_t e) {
  std::vector<std::string> out;
  for (uint32_t t = b; t < e; ++t) {
    const Token& tok = doc.tokens[t];
    if (tok.case_class != CaseClass::Punct) out.push_back(tok.surface);
  }
  return out;
}

struct SpanFit {
  bool feasible = true;
  int exact = -1;                 // mention covering the span exactly
  std::vector<size_t> contained;  // mentions strictly inside
};

SpanFit fit_span(const std::vector<Mention>& mentions, uint32_t b, uint32_t e) {
  SpanFit fit;
  for (size_t i = 0; i < mentions.size(); ++i) {
    const Mention& m = mentions[i];
    if (m.end <= b || e <= m.begin) continue;
    if (m.begin == b && m.end == e) {
      fit.exact = static_cast<int>(i);
    } else if (m.begin >= b && m.end <= e) {
      fit.contained.push_back(i);
    } else {
      fit.feasible = false;  // crosses the span boundary
    }
  }
  return fit;
}

}  // namespace

std::vector<AcronymDef> detect_acronym_defs(const Document& doc,
                                            DocumentKb& dkb,
                                            std::vector<Mention>& mentions,
                                            const RulePack& pack) {
  std::vector<AcronymDef> defs;
  const uint32_t n = static_cast<uint32_t>(doc.tokens.size());

  for (uint32_t p = 0; p < n; ++p) {
    if (doc.tokens[p].surface != "(") continue;
    uint32_t sent = doc.sentence_of(p);
    if (sent >= doc.sentence_spans.size()) continue;
    auto [sb, se] = doc.sentence_spans[sent];
    uint32_t q = p + 1;
    bool nested = false;
    while (q < se && doc.tokens[q].surface != ")") {
      if (doc.tokens[q].surface == "(") nested = true;
      ++q;
    }
    if (q >= se || nested || q == p + 1) continue;

    AcronymDef def;
    bool accepted = false;
    uint32_t exp_b = 0, exp_e = 0;
    std::string acro;
    uint32_t acro_tok = 0;

    // Expansion ( ACR )
    if (q == p + 2 && acronym_eligible(doc.tokens[p + 1])) {
      uint32_t wb = p;
      while (wb > sb && window_token_allowed(doc, dkb, wb - 1)) --wb;
      for (uint32_t s = wb; s < p && !accepted; ++s) {
        if (!is_capitalized(doc.tokens[s])) continue;
        if (match_acronym_letters(doc.tokens[p + 1].surface,
                                  span_surfaces(doc, s, p), dkb)) {
          // Leading articles stay outside the name when the rest still
          // aligns ("La Société des Bourses Françaises (SBF)").
          while (s + 1 < p && token_skippable(doc, dkb, s) &&
                 is_capitalized(doc.tokens[s + 1]) &&
                 match_acronym_letters(doc.tokens[p + 1].surface,
                                       span_surfaces(doc, s + 1, p), dkb))
            ++s;
          accepted = true;
          exp_b = s;
          exp_e = p;
          acro = doc.tokens[p + 1].surface;
          acro_tok = p + 1;
          def.expansion_first = true;
        }
      }
    }
    // ACR ( Expansion )
    if (!accepted && p > sb && acronym_eligible(doc.tokens[p - 1])) {
      bool any_word = false;
      for (uint32_t t = p + 1; t < q; ++t)
        if (has_letters(doc.tokens[t].surface)) any_word = true;
      if (any_word && match_acronym_letters(doc.tokens[p - 1].surface,
                                            span_surfaces(doc, p + 1, q),
                                            dkb)) {
        accepted = true;
        exp_b = p + 1;
        exp_e = q;
        acro = doc.tokens[p - 1].surface;
        acro_tok = p - 1;
        def.expansion_first = false;
      }
    }
    if (!accepted) continue;

    SpanFit exp_fit = fit_span(mentions, exp_b, exp_e);
    SpanFit acro_fit = fit_span(mentions, acro_tok, acro_tok + 1);
    if (!exp_fit.feasible || !acro_fit.feasible) continue;

    // Reference: reuse the known reference when the expansion is exactly a
    // known unambiguous mention, otherwise create an overlay reference.
    RefId ref = kNone;
    std::string category;
    if (exp_fit.exact >= 0 &&
        mentions[exp_fit.exact].candidates.size() == 1) {
      ref = mentions[exp_fit.exact].candidates[0];
      category = dkb.category_of(ref);
    } else {
      // A prototype may categorize the expansion on its own.
      std::vector<Mention> inside;
      for (size_t i : exp_fit.contained) inside.push_back(mentions[i]);
      if (auto grown =
              apply_prototypes({exp_b, exp_e}, doc, dkb, pack, inside)) {
        category = grown->category;
      }
    }
    std::vector<std::string> words = form_words(doc, exp_b, exp_e);
    if (words.empty()) continue;
    if (ref == kNone) {
      // Two organisations may introduce the same acronym in one document;
      // a reused id must already own this expansion, otherwise the new
      // definition gets its own reference (homonym links follow from the
      // shared acronym form).
      std::string rid = "doc:" + acronym_fold(acro);
      int serial = 2;
      while (auto existing = dkb.find_ref(rid)) {
        NormKey key;
        bool resolvable = true;
        for (const auto& w : words) {
          auto wid = dkb.resolve(w);
          if (!wid) {
            resolvable = false;
            break;
          }
          key.push_back(dkb.norm_of(*wid));
        }
        bool owns = false;
        if (resolvable) {
          for (const Form& f : dkb.overlay_forms())
            if (f.owner == *existing && f.key == key) owns = true;
        }
        if (owns) break;
        rid = "doc:" + acronym_fold(acro) + "~" + std::to_string(serial++);
      }
      DocumentKb::NewRef proto;
      proto.category = category;
      ref = dkb.extend(rid, proto, {words});
    } else {
      dkb.add_form(ref, words);
    }
    dkb.add_form(ref, {acro});
    category = dkb.category_of(ref);

    // Rewrite definition-site mentions.
    std::set<size_t, std::greater<size_t>> to_remove;
    if (exp_fit.exact < 0)
      for (size_t i : exp_fit.contained) to_remove.insert(i);
    if (acro_fit.exact >= 0) to_remove.insert(acro_fit.exact);
    for (size_t i : to_remove) mentions.erase(mentions.begin() + i);

    if (exp_fit.exact < 0) {
      Mention m;
      m.begin = exp_b;
      m.end = exp_e;
      m.candidates = {ref};
      m.category = category;
      m.method = Method::AcronymDef;
      m.confidence = kConfAcronymDef;
      if (auto key = normalize_sequence(dkb, doc, exp_b, exp_e)) m.key = *key;
      mentions.push_back(std::move(m));
    }
    Mention a;
    a.begin = acro_tok;
    a.end = acro_tok + 1;
    a.candidates = {ref};
    a.category = category;
    a.method = Method::AcronymDef;
    a.confidence = kConfAcronymDef;
    if (auto key = normalize_sequence(dkb, doc, acro_tok, acro_tok + 1))
      a.key = *key;
    mentions.push_back(std::move(a));
    std::sort(mentions.begin(), mentions.end(),
              [](const Mention& x, const Mention& y) { return x.begin < y.begin; });

    def.acro_token = acro_tok;
    def.exp_begin = exp_b;
    def.exp_end = exp_e;
    def.ref = ref;
    defs.push_back(def);
    p = q;
  }
  return defs;
}

// ---------------------------------------------------------------------------
// Radical links

namespace {

std::vector<std::string> fold_sequence(const Document& doc, uint32_t b,
                                       uint32_t e) {
  std::vector<std::string> out;
  for (uint32_t t = b; t < e; ++t) {
    const Token& tok = doc.tokens[t];
    if (tok.case_class == CaseClass::Punct) continue;
    out.push_back(case_fold(tok.surface));
  }
  return out;
}

bool contains_contiguous(const std::vector<std::string>& big,
                         const std::vector<std::string>& small) {
  if (small.empty() || big.size() <= small.size()) return false;
  for (size_t i = 0; i + small.size() <= big.size(); ++i) {
    if (std::equal(small.begin(), small.end(), big.begin() + i)) return true;
  }
  return false;
}

}  // namespace

std::vector<RadicalLink> link_radicals(const Document& doc,
                                       const DocumentKb& dkb,
                                       std::vector<Mention>& mentions) {
  (void)dkb;
  std::vector<RadicalLink> links;
  for (size_t mi = 0; mi < mentions.size(); ++mi) {
    Mention& m = mentions[mi];
    if (!m.category.empty() || !m.candidates.empty()) continue;
    auto small = fold_sequence(doc, m.begin, m.end);
    if (small.empty()) continue;

    std::vector<RefId> refs;
    std::string category;
    size_t container = 0;
    for (size_t ci = 0; ci < mentions.size(); ++ci) {
      const Mention& c = mentions[ci];
      if (ci == mi || c.category.empty() || c.candidates.size() != 1) continue;
      auto big = fold_sequence(doc, c.begin, c.end);
      if (!contains_contiguous(big, small)) continue;
      if (std::find(refs.begin(), refs.end(), c.candidates[0]) == refs.end()) {
        refs.push_back(c.candidates[0]);
        category = c.category;
        container = ci;
      }
    }
    if (refs.size() == 1) {
      m.candidates = {refs[0]};
      m.category = category;
      m.method = Method::RadicalLink;
      m.confidence = kConfRadicalLink;
      m.doubtful = false;
      links.push_back({mi, container, std::move(small)});
    } else if (refs.size() >= 2) {
      m.doubtful = true;
    }
  }
  return links;
}

// ---------------------------------------------------------------------------
// Global disambiguation

void disambiguate_global(const Document& doc, const DocumentKb& dkb,
                         std::vector<Mention>& mentions) {
  (void)doc;
  std::unordered_set<NormKey, NormKeyHash> doc_keys;
  std::unordered_set<RefId> unambiguous;
  for (const auto& m : mentions) {
    if (!m.key.empty()) doc_keys.insert(m.key);
    if (m.candidates.size() == 1) unambiguous.insert(m.candidates[0]);
  }

  auto distinct_forms_present = [&](RefId r) {
    std::set<NormKey> present;
    if (!dkb.is_overlay_ref(r)) {
      const auto& base = dkb.base();
      for (FormId f : base.references()[r].forms) {
        const NormKey& key = base.forms()[f].key;
        if (doc_keys.count(key)) present.insert(key);
      }
    }
    for (const Form& f : dkb.overlay_forms()) {
      if (f.owner == r && doc_keys.count(f.key)) present.insert(f.key);
    }
    return present.size();
  };

  for (auto& m : mentions) {
    if (m.candidates.size() <= 1) continue;

    RefId best = kNone;
    size_t best_count = 0;
    bool unique = false;
    for (RefId r : m.candidates) {
      size_t c = distinct_forms_present(r);
      if (c > best_count) {
        best_count = c;
        best = r;
        unique = true;
      } else if (c == best_count) {
        unique = false;
      }
    }
    if (unique && best_count >= 2) {
      m.candidates = {best};
      m.category = dkb.category_of(best);
      m.doubtful = false;
      continue;
    }

    std::vector<RefId> backed;
    for (RefId r : m.candidates)
      if (unambiguous.count(r)) backed.push_back(r);
    if (backed.size() == 1) {
      m.candidates = {backed[0]};
      m.category = dkb.category_of(backed[0]);
      m.doubtful = false;
      continue;
    }

    // Most frequent interpretation; the user is told the choice is doubtful.
    RefId pick = m.candidates[0];
    for (RefId r : m.candidates) {
      if (dkb.ref(r).rank < dkb.ref(pick).rank ||
          (dkb.ref(r).rank == dkb.ref(pick).rank &&
           dkb.ref_id(r) < dkb.ref_id(pick)))
        pick = r;
    }
    m.candidates = {pick};
    m.category = dkb.category_of(pick);
    m.method = Method::FrequencyFallback;
    m.confidence = kConfFallback;
    m.doubtful = true;
  }
}

}  // namespace nomen

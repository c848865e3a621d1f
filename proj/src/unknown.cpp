#include "nomen/unknown.hpp"

#include <algorithm>

#include "nomen/text.hpp"

namespace nomen {

namespace {

// Sentence-initial token that case-folds to a lowercase common word
// ("Le", "Selon"): capitalization carries no name evidence.
bool is_sentence_case_common_word(const Document& doc, const DocumentKb& dkb,
                                  uint32_t t) {
  const Token& tok = doc.tokens[t];
  if (!tok.sentence_initial) return false;
  auto w = dkb.resolve(tok.surface);
  return w && !first_letter_upper(dkb.word(*w).surface);
}

}  // namespace

std::vector<std::pair<uint32_t, uint32_t>> detect_unknown_segments(
    const Document& doc, const DocumentKb& dkb,
    const std::vector<Mention>& known) {
  std::vector<bool> covered(doc.tokens.size(), false);
  for (const auto& m : known)
    for (uint32_t t = m.begin; t < m.end; ++t) covered[t] = true;

  std::vector<std::pair<uint32_t, uint32_t>> segments;
  for (const auto& [sb, se] : doc.sentence_spans) {
    uint32_t i = sb;
    while (i < se) {
      // A common word in sentence case carries no name evidence and
      // neither forms nor starts a segment.
      if (covered[i] || !is_capitalized(doc.tokens[i]) ||
          is_sentence_case_common_word(doc, dkb, i)) {
        ++i;
        continue;
      }
      uint32_t j = i;
      for (;;) {
        uint32_t n = j + 1;
        auto open_cap = [&](uint32_t t) {
          return t < se && !covered[t] && is_capitalized(doc.tokens[t]);
        };
        if (open_cap(n)) {
          j = n;
          continue;
        }
        if (n < se && !covered[n] && is_hyphen_token(doc.tokens[n])) {
          if (open_cap(n + 1)) {
            j = n + 1;
            continue;
          }
          // "-sur-": lowercase word framed by hyphens
          if (n + 3 < se && !covered[n + 1] &&
              doc.tokens[n + 1].case_class == CaseClass::Lower &&
              !covered[n + 2] && is_hyphen_token(doc.tokens[n + 2]) &&
              open_cap(n + 3)) {
            j = n + 3;
            continue;
          }
        }
        if (n < se && !covered[n] && is_elision_token(doc.tokens[n]) &&
            open_cap(n + 1)) {
          j = n + 1;
          continue;
        }
        break;
      }
      if (!(j == i && is_sentence_case_common_word(doc, dkb, i)))
        segments.emplace_back(i, j + 1);
      i = j + 1;
    }
  }
  return segments;
}

// ---------------------------------------------------------------------------
// Window engine

namespace {

struct Item {
  bool is_mention = false;
  int orig = -1;  // index into the input mention list, -1 for grown
  Mention m;      // payload for mention items
  bool ext_ok = true;
  uint32_t token = 0;  // token index for token items

  uint32_t begin(const Document&) const { return is_mention ? m.begin : token; }
  uint32_t end(const Document&) const {
    return is_mention ? m.end : token + 1;
  }
};

struct Window {
  std::vector<Item> items;
};

struct Unit {
  uint32_t begin, end;
  int mention_idx;  // -1 for segments
};

bool token_has_attr(const Document& doc, const DocumentKb& dkb, uint32_t t,
                    const std::string& attr) {
  auto w = dkb.resolve(doc.tokens[t].surface);
  return w && dkb.word_has_attr(*w, attr);
}

// Unknown means absent from the base vocabulary; words the document added
// to its overlay (acronym expansions) are not vocabulary.
bool is_unknown_upcase(const Document& doc, const DocumentKb& dkb,
                       uint32_t t) {
  if (!is_capitalized(doc.tokens[t])) return false;
  const KnowledgeBase& base = dkb.base();
  return !base.resolve_exact(doc.tokens[t].surface) &&
         !base.resolve_folded(doc.tokens[t].surface);
}

bool atom_matches_item(const PatternAtom& atom, const Item& item,
                       const Document& doc, const DocumentKb& dkb) {
  switch (atom.kind) {
    case AtomKind::WordAttr:
      return !item.is_mention &&
             token_has_attr(doc, dkb, item.token, atom.attribute);
    case AtomKind::UnknownUpcase:
      return !item.is_mention && is_unknown_upcase(doc, dkb, item.token);
    case AtomKind::KnownMention:
      return item.is_mention && item.ext_ok && item.m.category == atom.category;
    case AtomKind::Literal:
      return false;  // handled separately
  }
  return false;
}

bool try_match(const PrototypeRule& rule, const std::vector<Item>& items,
               size_t p, const Document& doc, const DocumentKb& dkb,
               size_t& q_out) {
  size_t i = p;
  for (const auto& atom : rule.pattern) {
    if (atom.kind == AtomKind::Literal) {
      std::string acc;
      bool done = false;
      while (i < items.size() && !items[i].is_mention) {
        acc += case_fold(doc.tokens[items[i].token].surface);
        ++i;
        if (acc == atom.text) {
          done = true;
          break;
        }
        if (acc.size() >= atom.text.size()) break;
      }
      if (!done) return false;
    } else {
      if (i >= items.size() || !atom_matches_item(atom, items[i], doc, dkb))
        return false;
      ++i;
    }
  }
  // Re-wrapping a single mention is a no-op; refuse it.
  if (i - p == 1 && items[p].is_mention) return false;
  q_out = i;
  return true;
}

std::vector<Window> build_windows(const Document& doc,
                                  const std::vector<Mention>& known,
                                  const std::vector<std::pair<uint32_t, uint32_t>>& segments) {
  std::vector<Unit> units;
  for (size_t i = 0; i < known.size(); ++i)
    units.push_back({known[i].begin, known[i].end, static_cast<int>(i)});
  for (const auto& [b, e] : segments) units.push_back({b, e, -1});
  std::sort(units.begin(), units.end(),
            [](const Unit& a, const Unit& b) { return a.begin < b.begin; });

  std::vector<Window> windows;
  size_t u = 0;
  while (u < units.size()) {
    Window w;
    auto push_unit = [&](const Unit& unit) {
      if (unit.mention_idx >= 0) {
        Item it;
        it.is_mention = true;
        it.orig = unit.mention_idx;
        it.m = known[unit.mention_idx];
        w.items.push_back(std::move(it));
      } else {
        for (uint32_t t = unit.begin; t < unit.end; ++t) {
          Item it;
          it.token = t;
          w.items.push_back(std::move(it));
        }
      }
    };
    push_unit(units[u]);
    while (u + 1 < units.size()) {
      const Unit& cur = units[u];
      const Unit& next = units[u + 1];
      if (doc.sentence_of(cur.begin) != doc.sentence_of(next.begin)) break;
      uint32_t gb = cur.end, ge = next.begin;
      uint32_t len = ge - gb;
      bool connector = false;
      if (len == 0) connector = true;
      if (len == 1 && (is_hyphen_token(doc.tokens[gb]) ||
                       is_elision_token(doc.tokens[gb])))
        connector = true;
      if (len == 3 && is_hyphen_token(doc.tokens[gb]) &&
          doc.tokens[gb + 1].case_class == CaseClass::Lower &&
          is_hyphen_token(doc.tokens[gb + 2]))
        connector = true;
      if (!connector) break;
      for (uint32_t t = gb; t < ge; ++t) {
        Item it;
        it.token = t;
        w.items.push_back(std::move(it));
      }
      push_unit(next);
      ++u;
    }
    ++u;
    windows.push_back(std::move(w));
  }
  return windows;
}

struct EngineResult {
  std::vector<Mention> grown;
  std::vector<bool> absorbed;  // indexed like the input mention list
  std::vector<Mention> leftovers;
};

EngineResult run_engine(const Document& doc, const DocumentKb& dkb,
                        const std::vector<Mention>& known,
                        const RulePack& pack,
                        const std::vector<std::pair<uint32_t, uint32_t>>& segments) {
  EngineResult res;
  res.absorbed.assign(known.size(), false);
  std::vector<Window> windows = build_windows(doc, known, segments);

  for (auto& w : windows) {
    auto& items = w.items;
    long guard =
        static_cast<long>((items.size() + 2) * (pack.prototypes.size() + 1) * 4);
    bool changed = true;
    while (changed && guard-- > 0) {
      changed = false;
      for (const auto& rule : pack.prototypes) {
        for (size_t p = 0; p < items.size() && !changed; ++p) {
          size_t q;
          if (!try_match(rule, items, p, doc, dkb, q)) continue;
          Mention grown;
          grown.begin = items[p].begin(doc);
          grown.end = items[q - 1].end(doc);
          grown.category = rule.category;
          grown.method = Method::Prototype;
          grown.confidence = kConfPrototype;
          grown.doubtful = false;
          for (size_t k = p; k < q; ++k)
            if (items[k].is_mention && items[k].orig >= 0)
              res.absorbed[items[k].orig] = true;
          Item it;
          it.is_mention = true;
          it.orig = -1;
          it.m = std::move(grown);
          it.ext_ok = rule.extendable;
          items.erase(items.begin() + p, items.begin() + q);
          items.insert(items.begin() + p, std::move(it));
          changed = true;
        }
        if (changed) break;
      }
    }

    // Collect grown mentions and leftover token runs.
    size_t i = 0;
    while (i < items.size()) {
      if (items[i].is_mention) {
        if (items[i].orig < 0) res.grown.push_back(items[i].m);
        ++i;
        continue;
      }
      size_t j = i;
      while (j < items.size() && !items[j].is_mention &&
             (j == i || items[j].token == items[j - 1].token + 1))
        ++j;
      // Trim connector tokens at the run edges.
      size_t b = i, e = j;
      while (b < e && !is_capitalized(doc.tokens[items[b].token])) ++b;
      while (e > b && !is_capitalized(doc.tokens[items[e - 1].token])) --e;
      if (b < e) {
        uint32_t tb = items[b].token, te = items[e - 1].token + 1;
        bool single = (te - tb) == 1;
        if (!(single && is_sentence_case_common_word(doc, dkb, tb))) {
          Mention m;
          m.begin = tb;
          m.end = te;
          m.method = Method::Prototype;
          m.doubtful = true;
          bool demoted = single && doc.tokens[tb].sentence_initial &&
                         doc.tokens[tb].case_class == CaseClass::InitialUpper;
          m.confidence = demoted ? kConfSentenceInitialOnly : kConfUncategorized;
          res.leftovers.push_back(std::move(m));
        }
      }
      i = j;
    }
  }
  return res;
}

}  // namespace

std::vector<Mention> extend_and_classify(const Document& doc,
                                         const DocumentKb& dkb,
                                         const std::vector<Mention>& known,
                                         const RulePack& pack) {
  auto segments = detect_unknown_segments(doc, dkb, known);
  EngineResult res = run_engine(doc, dkb, known, pack, segments);
  std::vector<Mention> out;
  for (size_t i = 0; i < known.size(); ++i)
    if (!res.absorbed[i]) out.push_back(known[i]);
  for (auto& m : res.grown) out.push_back(std::move(m));
  for (auto& m : res.leftovers) out.push_back(std::move(m));
  std::sort(out.begin(), out.end(),
            [](const Mention& a, const Mention& b) { return a.begin < b.begin; });
  return out;
}

std::optional<Mention> apply_prototypes(std::pair<uint32_t, uint32_t> segment,
                                        const Document& doc,
                                        const DocumentKb& dkb,
                                        const RulePack& pack,
                                        const std::vector<Mention>& known) {
  EngineResult res = run_engine(doc, dkb, known, pack, {segment});
  for (const auto& m : res.grown)
    if (m.begin < segment.second && segment.first < m.end) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Local context

namespace {

bool token_is_skippable(const Document& doc, const DocumentKb& dkb,
                        uint32_t t) {
  return token_has_attr(doc, dkb, t, kAttrAcronymSkippable);
}

// Finds the trigger evidence for a rule around mention [mb, me); for
// parenthetical rules also yields the inner reference.
bool relation_holds(const ContextRule& rule, const RulePack& pack,
                    const Mention& m, const Document& doc,
                    const DocumentKb& dkb,
                    const std::vector<Mention>& mentions, RefId& inner_ref) {
  uint32_t sent = doc.sentence_of(m.begin);
  if (sent >= doc.sentence_spans.size()) return false;
  auto [sb, se] = doc.sentence_spans[sent];
  switch (rule.relation) {
    case Relation::AppositionAfter: {
      if (m.end >= se || doc.tokens[m.end].surface != ",") return false;
      uint32_t s = m.end + 1;
      for (int skipped = 0; s < se && skipped < 2 &&
                            token_is_skippable(doc, dkb, s);
           ++skipped)
        ++s;
      return s < se && token_has_attr(doc, dkb, s, rule.trigger);
    }
    case Relation::ComplementOfBefore: {
      if (m.begin <= sb) return false;
      auto is_prep = [&](uint32_t t) {
        std::string folded = case_fold(doc.tokens[t].surface);
        return std::find(pack.of_prepositions.begin(),
                         pack.of_prepositions.end(),
                         folded) != pack.of_prepositions.end();
      };
      // ⟨trigger⟩ ⟨of-preposition⟩ [skippable] ⟨mention⟩
      uint32_t j = m.begin - 1;
      if (!is_prep(j)) {
        if (j <= sb || !token_is_skippable(doc, dkb, j)) return false;
        --j;
        if (!is_prep(j)) return false;
      }
      if (j <= sb) return false;
      return token_has_attr(doc, dkb, j - 1, rule.trigger);
    }
    case Relation::ParentheticalAfter: {
      if (m.end >= se || doc.tokens[m.end].surface != "(") return false;
      for (const auto& mi : mentions) {
        if (mi.begin != m.end + 1) continue;
        if (mi.end >= se || doc.tokens[mi.end].surface != ")") continue;
        if (mi.candidates.size() != 1) continue;
        if (dkb.category_of(mi.candidates[0]) != rule.trigger) continue;
        inner_ref = mi.candidates[0];
        return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

Mention apply_local_context(Mention m, const Document& doc,
                            const DocumentKb& dkb, const RulePack& pack,
                            const std::vector<Mention>& mentions) {
  bool uncategorized = m.category.empty() && m.candidates.size() <= 1;
  bool ambiguous = m.candidates.size() > 1;
  if (!uncategorized && !ambiguous) return m;

  for (const auto& rule : pack.contexts) {
    bool applicable = ambiguous ? rule.action == ContextAction::Restrict
                                : rule.action == ContextAction::AssignCategory;
    if (!applicable) continue;
    RefId inner = kNone;
    if (!relation_holds(rule, pack, m, doc, dkb, mentions, inner)) continue;

    if (rule.action == ContextAction::AssignCategory) {
      m.category = rule.category;
      m.method = Method::LocalContext;
      m.confidence = kConfLocalContext;
      m.doubtful = false;
      return m;
    }
    // Restriction; never widens, never empties.
    std::vector<RefId> kept;
    for (RefId r : m.candidates) {
      bool ok;
      if (rule.predicate == "contained-in") {
        ok = dkb.ref_has_attr(
            r, std::string(kContainedInPrefix) + dkb.ref_id(inner));
      } else {
        ok = dkb.category_of(r) == rule.category;
      }
      if (ok) kept.push_back(r);
    }
    if (kept.empty()) {
      m.doubtful = true;
      continue;
    }
    m.candidates = std::move(kept);
    if (m.candidates.size() == 1) {
      m.category = dkb.category_of(m.candidates[0]);
      m.method = Method::LocalContext;
      m.confidence = kConfLocalContext;
      m.doubtful = false;
      return m;
    }
  }
  return m;
}

}  // namespace nomen

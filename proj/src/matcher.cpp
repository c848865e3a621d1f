#include "nomen/matcher.hpp"

#include <algorithm>

namespace nomen {

const char* to_string(Method m) {
  switch (m) {
    case Method::KnownForm: return "known-form";
    case Method::AcronymDef: return "acronym-def";
    case Method::Prototype: return "prototype";
    case Method::LocalContext: return "local-context";
    case Method::RadicalLink: return "radical-link";
    case Method::FrequencyFallback: return "frequency-fallback";
  }
  return "?";
}

std::optional<NormKey> normalize_sequence(const DocumentKb& dkb,
                                          const Document& doc, uint32_t begin,
                                          uint32_t end) {
  NormKey key;
  bool prev_was_word = false;
  for (uint32_t i = begin; i < end; ++i) {
    const Token& t = doc.tokens[i];
    if (is_hyphen_token(t)) {
      // A single hyphen between two words is a word boundary.
      if (!prev_was_word || i + 1 >= end) return std::nullopt;
      prev_was_word = false;
      continue;
    }
    auto w = dkb.resolve(t.surface);
    if (!w) return std::nullopt;
    key.push_back(dkb.norm_of(*w));
    prev_was_word = true;
  }
  if (key.empty()) return std::nullopt;
  return key;
}

std::vector<RefId> lookup_form(const DocumentKb& dkb,
                               const std::vector<std::string>& surfaces) {
  NormKey key;
  for (const auto& s : surfaces) {
    Document piece = tokenize("", s);
    bool prev_was_word = false;
    for (const Token& t : piece.tokens) {
      if (is_hyphen_token(t) && prev_was_word) {
        prev_was_word = false;
        continue;
      }
      auto w = dkb.resolve(t.surface);
      if (!w) return {};
      key.push_back(dkb.norm_of(*w));
      prev_was_word = true;
    }
  }
  if (key.empty()) return {};
  return dkb.lookup(key);
}

FormMatcher::FormMatcher(const KnowledgeBase& kb) : kb_(kb) {
  nodes_.emplace_back();
  for (FormId f = 0; f < kb.forms().size(); ++f) {
    uint32_t node = 0;
    for (NormId sym : kb.forms()[f].key) {
      uint32_t next = child(node, sym);
      if (next == kNone) {
        next = static_cast<uint32_t>(nodes_.size());
        nodes_[node].next.emplace_back(sym, next);
        std::sort(nodes_[node].next.begin(), nodes_[node].next.end());
        nodes_.emplace_back();
      }
      node = next;
    }
    nodes_[node].accepts.push_back(f);
  }
}

uint32_t FormMatcher::child(uint32_t node, NormId sym) const {
  const auto& next = nodes_[node].next;
  auto it = std::lower_bound(next.begin(), next.end(),
                             std::make_pair(sym, uint32_t{0}));
  if (it != next.end() && it->first == sym) return it->second;
  return kNone;
}

namespace {

bool any_capitalized(const Document& doc, uint32_t begin, uint32_t end) {
  for (uint32_t i = begin; i < end; ++i)
    if (is_capitalized(doc.tokens[i])) return true;
  return false;
}

// Aligns one overlay form at pos with the same bridging rules as the trie
// walk; returns consumed token count or 0.
uint32_t align_overlay(const Document& doc, const DocumentKb& dkb,
                       const Form& form, uint32_t pos, uint32_t to) {
  uint32_t j = pos;
  for (size_t k = 0; k < form.key.size(); ++k) {
    if (k > 0 && j < to && is_hyphen_token(doc.tokens[j]) && j + 1 < to) {
      auto w = dkb.resolve(doc.tokens[j + 1].surface);
      if (w && dkb.norm_of(*w) == form.key[k]) {
        j += 2;
        continue;
      }
    }
    if (j >= to) return 0;
    auto w = dkb.resolve(doc.tokens[j].surface);
    if (!w || dkb.norm_of(*w) != form.key[k]) return 0;
    ++j;
  }
  return j - pos;
}

}  // namespace

std::vector<Mention> FormMatcher::scan(const Document& doc,
                                       const DocumentKb& dkb, uint32_t from,
                                       uint32_t to) const {
  std::vector<Mention> out;
  uint32_t pos = from;
  while (pos < to) {
    uint32_t best_len = 0;
    std::vector<RefId> cands;
    NormKey best_key;

    // Base trie walk with single-hyphen bridging between words.
    uint32_t node = 0;
    uint32_t j = pos;
    NormKey key;
    bool first = true;
    while (j < to) {
      uint32_t k = j;
      if (!first && is_hyphen_token(doc.tokens[j])) {
        if (j + 1 >= to) break;
        k = j + 1;
      }
      auto w = dkb.resolve(doc.tokens[k].surface);
      if (!w) break;
      NormId sym = dkb.norm_of(*w);
      uint32_t next = child(node, sym);
      if (next == kNone) break;
      node = next;
      key.push_back(sym);
      j = k + 1;
      first = false;
      if (!nodes_[node].accepts.empty() && any_capitalized(doc, pos, j)) {
        uint32_t len = j - pos;
        if (len > best_len) {
          best_len = len;
          cands.clear();
          best_key = key;
        }
        if (len == best_len) {
          for (FormId f : nodes_[node].accepts)
            cands.push_back(kb_.forms()[f].owner);
        }
      }
    }

    // Overlay forms, aligned directly.
    const auto& overlay = dkb.overlay_forms();
    uint32_t base_forms = static_cast<uint32_t>(kb_.forms().size());
    (void)base_forms;
    for (const Form& f : overlay) {
      uint32_t len = align_overlay(doc, dkb, f, pos, to);
      if (len == 0 || !any_capitalized(doc, pos, pos + len)) continue;
      if (len > best_len) {
        best_len = len;
        cands.clear();
        best_key = f.key;
      }
      if (len == best_len) cands.push_back(f.owner);
    }

    if (best_len > 0) {
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
      Mention m;
      m.begin = pos;
      m.end = pos + best_len;
      m.candidates = std::move(cands);
      m.method = Method::KnownForm;
      m.confidence = kConfKnownForm;
      m.doubtful = m.candidates.size() > 1;
      if (m.candidates.size() == 1)
        m.category = dkb.category_of(m.candidates[0]);
      m.key = std::move(best_key);
      out.push_back(std::move(m));
      pos += best_len;
    } else {
      ++pos;
    }
  }
  return out;
}

std::vector<Mention> FormMatcher::match_known(const Document& doc,
                                              const DocumentKb& dkb) const {
  return scan(doc, dkb, 0, static_cast<uint32_t>(doc.tokens.size()));
}

}  // namespace nomen

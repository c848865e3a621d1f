#include "nomen/pipeline.hpp"

#include <algorithm>

#include "json.hpp"
#include "nomen/coref.hpp"
#include "nomen/text.hpp"
#include "nomen/unknown.hpp"

namespace nomen {

using ordered_json = nlohmann::ordered_json;

std::string to_jsonl(const AnnotationRecord& rec) {
  ordered_json j;
  j["doc_id"] = rec.doc_id;
  j["start_byte"] = rec.start_byte;
  j["end_byte"] = rec.end_byte;
  j["surface"] = rec.surface;
  j["category"] = rec.category;
  if (!rec.reference.empty()) j["reference"] = rec.reference;
  j["confidence"] = rec.confidence;
  j["doubtful"] = rec.doubtful;
  j["method"] = rec.method;
  return j.dump();
}

AnnotationRecord record_from_json(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  AnnotationRecord rec;
  rec.doc_id = j.at("doc_id").get<std::string>();
  rec.start_byte = j.at("start_byte").get<uint32_t>();
  rec.end_byte = j.at("end_byte").get<uint32_t>();
  rec.surface = j.value("surface", "");
  rec.category = j.value("category", "unknown");
  rec.reference = j.value("reference", "");
  rec.confidence = j.value("confidence", 0.0);
  rec.doubtful = j.value("doubtful", false);
  rec.method = j.value("method", "");
  return rec;
}

Annotator::Annotator(const KnowledgeBase& kb, RulePack rules,
                     PipelineOptions opts)
    : kb_(kb), rules_(std::move(rules)), matcher_(kb), opts_(opts) {
  validate_rules(rules_, kb_);
}

namespace {

void sort_mentions(std::vector<Mention>& mentions) {
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) { return a.begin < b.begin; });
}

// Scan the gaps between existing mentions; new matches may not overlap.
void rematch_gaps(const FormMatcher& matcher, const Document& doc,
                  const DocumentKb& dkb, std::vector<Mention>& mentions) {
  std::vector<bool> covered(doc.tokens.size(), false);
  for (const auto& m : mentions)
    for (uint32_t t = m.begin; t < m.end; ++t) covered[t] = true;
  uint32_t n = static_cast<uint32_t>(doc.tokens.size());
  uint32_t i = 0;
  std::vector<Mention> fresh;
  while (i < n) {
    if (covered[i]) {
      ++i;
      continue;
    }
    uint32_t j = i;
    while (j < n && !covered[j]) ++j;
    auto found = matcher.scan(doc, dkb, i, j);
    fresh.insert(fresh.end(), found.begin(), found.end());
    i = j;
  }
  mentions.insert(mentions.end(), fresh.begin(), fresh.end());
  sort_mentions(mentions);
}

// Categorized segment mentions become overlay references so that radical
// links and global form counting can see them; identical names in one
// document share one reference.
void register_unknowns(const Document& doc, DocumentKb& dkb,
                       std::vector<Mention>& mentions) {
  for (auto& m : mentions) {
    if (m.category.empty() || !m.candidates.empty()) continue;
    if (m.method != Method::Prototype && m.method != Method::LocalContext)
      continue;
    std::vector<std::string> words;
    for (uint32_t t = m.begin; t < m.end; ++t)
      if (doc.tokens[t].case_class != CaseClass::Punct)
        words.push_back(doc.tokens[t].surface);
    if (words.empty()) continue;
    std::string slug = "doc:";
    for (size_t i = 0; i < words.size(); ++i) {
      if (i) slug += "-";
      slug += case_fold(words[i]);
    }
    if (auto existing = dkb.find_ref(slug)) {
      if (dkb.category_of(*existing) != m.category)
        slug += ":" + m.category;
    }
    DocumentKb::NewRef proto;
    proto.category = m.category;
    RefId ref = dkb.extend(slug, proto, {words});
    m.candidates = {ref};
    NormKey key;
    for (const auto& w : words) {
      auto wid = dkb.resolve(w);
      if (wid) key.push_back(dkb.norm_of(*wid));
    }
    if (key.size() == words.size()) m.key = std::move(key);
  }
  // Context rules may categorize a mention whose reference (an acronym
  // definition) is still uncategorized; propagate to the reference.
  for (const auto& m : mentions) {
    if (!m.category.empty() && m.candidates.size() == 1 &&
        dkb.is_overlay_ref(m.candidates[0]) &&
        dkb.category_of(m.candidates[0]).empty())
      dkb.set_category(m.candidates[0], m.category);
  }
}

}  // namespace

AnnotateResult Annotator::annotate_full(const std::string& doc_id,
                                        std::string_view text) const {
  AnnotateResult res;
  res.doc = tokenize(doc_id, text);
  const Document& doc = res.doc;
  DocumentKb dkb(kb_);

  std::vector<Mention> mentions = matcher_.match_known(doc, dkb);
  detect_acronym_defs(doc, dkb, mentions, rules_);
  rematch_gaps(matcher_, doc, dkb, mentions);
  mentions = extend_and_classify(doc, dkb, mentions, rules_);

  // Local context: unknowns first, then ambiguous knowns.
  for (auto& m : mentions) {
    if (m.category.empty() && m.candidates.size() <= 1)
      m = apply_local_context(std::move(m), doc, dkb, rules_, mentions);
  }
  register_unknowns(doc, dkb, mentions);
  for (auto& m : mentions) {
    if (m.candidates.size() > 1)
      m = apply_local_context(std::move(m), doc, dkb, rules_, mentions);
  }

  if (opts_.radical_pass) link_radicals(doc, dkb, mentions);
  if (opts_.global_pass) disambiguate_global(doc, dkb, mentions);

  // Document-final rewrite: resolved references categorize their mentions.
  for (auto& m : mentions) {
    if (m.candidates.size() == 1) {
      std::string cat = dkb.category_of(m.candidates[0]);
      if (!cat.empty()) m.category = cat;
    }
  }
  sort_mentions(mentions);

  uint32_t last_end = 0;
  for (const auto& m : mentions) {
    if (m.begin < last_end) continue;  // overlaps never reach the output
    last_end = m.end;
    AnnotationRecord rec;
    rec.doc_id = doc.doc_id;
    rec.start_byte = doc.tokens[m.begin].start;
    rec.end_byte = doc.tokens[m.end - 1].end;
    rec.surface = doc.text.substr(rec.start_byte, rec.end_byte - rec.start_byte);
    rec.category = m.category.empty() ? "unknown" : m.category;
    if (m.candidates.size() == 1) rec.reference = dkb.ref_id(m.candidates[0]);
    rec.confidence = m.confidence;
    rec.doubtful = m.doubtful;
    rec.method = to_string(m.method);
    res.records.push_back(std::move(rec));
  }
  res.mentions = std::move(mentions);
  return res;
}

std::vector<AnnotationRecord> Annotator::annotate(const std::string& doc_id,
                                                  std::string_view text) const {
  return annotate_full(doc_id, text).records;
}

}  // namespace nomen

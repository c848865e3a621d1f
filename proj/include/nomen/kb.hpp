#pragma once
// Graph-structured knowledge base of proper names: words with attributes
// and equivalence classes, multi-word forms, references with factorized
// attributes, and explicit homonym links between references sharing a form.
//
// The base KB is immutable after load and safe to share across threads.
// Per-document additions (acronym definitions, names recognized on the fly)
// live in a DocumentKb overlay that never mutates the base.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nomen {

using WordId = uint32_t;
using FormId = uint32_t;
using RefId = uint32_t;
using NormId = uint32_t;
inline constexpr uint32_t kNone = 0xFFFFFFFFu;
inline constexpr uint32_t kDefaultRank = 1000;

// Attribute name prefix for containment ("in:<reference-id>").
inline constexpr const char* kContainedInPrefix = "in:";
inline constexpr const char* kAttrAcronymSkippable = "acronym-skippable";
inline constexpr const char* kAttrHumanTitle = "human-title";

class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class AttrKind { Category, WordMarker, ReferenceProperty };

struct AttributeDef {
  std::string name;
  AttrKind kind = AttrKind::WordMarker;
};

struct Word {
  std::string id;
  std::string surface;
  std::vector<uint32_t> attrs;  // attribute indexes, sorted
  uint32_t equiv = kNone;       // equivalence class index
  NormId norm = kNone;          // equivalence-class representative symbol
};

struct EquivClass {
  std::string id;
  std::vector<WordId> members;
};

struct Form {
  std::string id;
  std::vector<WordId> words;
  RefId owner = kNone;
  std::vector<NormId> key;  // equivalence-normalized word sequence
};

struct Reference {
  std::string id;
  uint32_t category = kNone;  // attribute index with kind Category
  std::vector<uint32_t> attrs;
  uint32_t rank = kDefaultRank;  // 0 = most frequent interpretation
  FormId canonical = kNone;
  std::vector<FormId> forms;
  std::vector<RefId> homonyms;
};

struct Violation {
  std::string check;
  std::string entity;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

using NormKey = std::vector<NormId>;

struct NormKeyHash {
  size_t operator()(const NormKey& k) const {
    size_t h = 1469598103934665603ull;
    for (NormId v : k) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

class KnowledgeBase {
 public:
  const std::vector<AttributeDef>& attributes() const { return attributes_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<Word>& words() const { return words_; }
  const std::vector<EquivClass>& equivs() const { return equivs_; }
  const std::vector<Form>& forms() const { return forms_; }
  const std::vector<Reference>& references() const { return refs_; }

  std::optional<uint32_t> attr_index(std::string_view name) const;
  bool is_category(uint32_t attr) const;

  std::optional<WordId> resolve_exact(std::string_view surface) const;
  std::optional<WordId> resolve_folded(std::string_view surface) const;

  NormId norm_of(WordId w) const { return words_[w].norm; }
  // Norm ids below this bound belong to the base KB; DocumentKb overlay
  // words are numbered from here.
  NormId norm_limit() const {
    return static_cast<NormId>(words_.size() + equivs_.size());
  }

  const std::vector<FormId>* find_key(const NormKey& key) const;
  std::optional<RefId> ref_index(std::string_view id) const;
  std::optional<FormId> form_index_of(std::string_view id) const;
  std::optional<WordId> word_index_of(std::string_view id) const;

  bool word_has_attr(WordId w, uint32_t attr) const;
  bool ref_has_attr(RefId r, uint32_t attr) const;

 private:
  friend class KbBuilder;
  std::vector<AttributeDef> attributes_;
  std::vector<std::string> categories_;
  std::vector<Word> words_;
  std::vector<EquivClass> equivs_;
  std::vector<Form> forms_;
  std::vector<Reference> refs_;
  std::unordered_map<std::string, uint32_t> attr_by_name_;
  std::unordered_map<std::string, WordId> word_by_id_;
  std::unordered_map<std::string, WordId> word_by_surface_;
  std::unordered_map<std::string, WordId> word_by_folded_;
  std::unordered_map<std::string, FormId> form_by_id_;
  std::unordered_map<std::string, RefId> ref_by_id_;
  std::unordered_map<NormKey, std::vector<FormId>, NormKeyHash> form_index_;
};

// Programmatic construction; load_kb uses it internally. With strict=true,
// build() throws LoadError on dangling ids and on references sharing a
// form key without a homonym link. With strict=false those become
// ValidationReport entries instead (dangling ids always throw, since the
// resulting KB could not be represented).
class KbBuilder {
 public:
  void header(std::vector<std::string> categories);
  void attribute(std::string name, AttrKind kind);
  void word(std::string id, std::string surface,
            std::vector<std::string> attrs = {});
  void equiv(std::string id, std::vector<std::string> member_word_ids);
  void form(std::string id, std::string ref_id,
            std::vector<std::string> word_ids);
  void reference(std::string id, std::string category,
                 std::string canonical_form_id,
                 std::vector<std::string> attrs = {},
                 uint32_t rank = kDefaultRank);
  void homonym(std::string a, std::string b);

  KnowledgeBase build(bool strict) const;

 private:
  struct WordRec {
    std::string id, surface;
    std::vector<std::string> attrs;
  };
  struct EquivRec {
    std::string id;
    std::vector<std::string> members;
  };
  struct FormRec {
    std::string id, ref;
    std::vector<std::string> words;
  };
  struct RefRec {
    std::string id, category, canonical;
    std::vector<std::string> attrs;
    uint32_t rank;
  };
  std::vector<std::string> categories_;
  std::vector<AttributeDef> attrs_;
  std::vector<WordRec> words_;
  std::vector<EquivRec> equivs_;
  std::vector<FormRec> forms_;
  std::vector<RefRec> refs_;
  std::vector<std::pair<std::string, std::string>> homonyms_;
};

KnowledgeBase load_kb(std::istream& in);
KnowledgeBase load_kb(const std::string& jsonl);
// Later files overlay earlier ones: a record reusing an id replaces it,
// header categories are merged in order.
KnowledgeBase load_kb_files(const std::vector<std::string>& paths);

std::string serialize_kb(const KnowledgeBase& kb);
ValidationReport validate_kb(const KnowledgeBase& kb);

// Per-document extension layer. Lookups consult the overlay first, then
// the base; overlay form keys colliding with base forms of a different
// reference produce document-scoped homonym links instead of errors.
class DocumentKb {
 public:
  explicit DocumentKb(const KnowledgeBase& base) : base_(base) {}

  const KnowledgeBase& base() const { return base_; }

  uint32_t word_count() const;
  uint32_t form_count() const;
  uint32_t ref_count() const;

  const Word& word(WordId w) const;
  const Form& form(FormId f) const;
  const Reference& ref(RefId r) const;
  bool is_overlay_ref(RefId r) const;

  std::optional<WordId> resolve_exact(std::string_view surface) const;
  // Exact match first, then case-folded.
  std::optional<WordId> resolve(std::string_view surface) const;
  NormId norm_of(WordId w) const;
  bool word_has_attr(WordId w, std::string_view attr) const;
  bool ref_has_attr(RefId r, std::string_view attr) const;
  // Category name of a reference, "" if uncategorized.
  std::string category_of(RefId r) const;
  std::string ref_id(RefId r) const { return ref(r).id; }

  // Union of base and overlay owners for a normalized key, sorted.
  std::vector<RefId> lookup(const NormKey& key) const;
  std::vector<RefId> homonyms_of(RefId r) const;
  // Overlay first, then base.
  std::optional<RefId> find_ref(const std::string& id) const;

  WordId add_word(std::string surface);
  struct NewRef {
    std::string category;  // "" = uncategorized
    uint32_t rank = kDefaultRank;
  };
  // Get-or-create an overlay reference by id. Adding a form whose key is
  // already owned by this reference is a no-op; a key owned by another
  // reference creates symmetric document-scoped homonym links.
  RefId extend(const std::string& id, const NewRef& proto,
               const std::vector<std::vector<std::string>>& forms);
  FormId add_form(RefId owner, const std::vector<std::string>& word_surfaces);
  void set_category(RefId overlay_ref, const std::string& category);

  const std::vector<Form>& overlay_forms() const { return forms_; }

 private:
  const KnowledgeBase& base_;
  std::vector<Word> words_;
  std::vector<Form> forms_;
  struct OverlayRef {
    Reference core;
    std::string category;  // category by name; "" = none
  };
  std::vector<OverlayRef> refs_;
  std::unordered_map<std::string, WordId> word_by_surface_;
  std::unordered_map<std::string, WordId> word_by_folded_;
  std::unordered_map<std::string, RefId> ref_by_id_;
  std::unordered_map<NormKey, std::vector<FormId>, NormKeyHash> form_index_;
  std::unordered_map<RefId, std::vector<RefId>> extra_homonyms_;
};

}  // namespace nomen

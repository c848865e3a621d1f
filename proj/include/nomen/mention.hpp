#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nomen/kb.hpp"

namespace nomen {

enum class Method {
  KnownForm,
  AcronymDef,
  Prototype,
  LocalContext,
  RadicalLink,
  FrequencyFallback,
};

const char* to_string(Method m);

// Confidence ladder; only the ordering is contractual.
inline constexpr double kConfKnownForm = 1.0;
inline constexpr double kConfAcronymDef = 0.95;
inline constexpr double kConfLocalContext = 0.85;
inline constexpr double kConfPrototype = 0.8;
inline constexpr double kConfRadicalLink = 0.75;
inline constexpr double kConfFallback = 0.5;
inline constexpr double kConfUncategorized = 0.3;
// A single InitialUpper token whose only uppercase evidence is its
// sentence-initial position.
inline constexpr double kConfSentenceInitialOnly = 0.15;

struct Mention {
  uint32_t begin = 0;  // token indexes, half open
  uint32_t end = 0;
  std::vector<RefId> candidates;  // sorted, unique; empty = category-only
  std::string category;           // "" = unknown
  double confidence = 0.0;
  bool doubtful = false;
  Method method = Method::KnownForm;
  NormKey key;  // normalized word sequence, empty when unresolvable

  bool overlaps(const Mention& o) const {
    return begin < o.end && o.begin < end;
  }
  bool contains_span(uint32_t b, uint32_t e) const {
    return begin <= b && e <= end;
  }
};

}  // namespace nomen

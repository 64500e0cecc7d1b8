#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace clocrc {

// One named-entity occurrence. `start` is a 0-based offset in Unicode scalar
// values into the source text exactly as passed (no normalization).
struct EntityMention {
  std::string surface;
  std::string type;  // "PER", "LOC", "ORG", "MISC", or a backend-specific tag
  std::size_t start = 0;
};

// Count vectors over the union entity set E. keys[i] is the normalized
// (surface, type) identity; predicted/reference hold occurrence counts.
struct EntityVectors {
  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<std::uint64_t> predicted;
  std::vector<std::uint64_t> reference;
};

struct VectorOptions {
  bool include_type = true;
};

// Deterministic lexicon tagger: longest match at each position, word
// boundaries on both sides, mentions emitted left to right.
struct GazetteerBackend {
  std::vector<std::pair<std::string, std::string>> lexicon;  // surface -> type
};

// Wire contract: POST endpoint with {"text": ...}; response
// {"mentions": [{"surface": str, "type": str, "start": int}]}, offsets
// 0-based in the request text.
struct HttpNerBackend {
  std::string endpoint;
  std::chrono::milliseconds timeout{10000};
};

using NerBackend = std::variant<GazetteerBackend, HttpNerBackend>;

class BackendUnavailableError : public std::runtime_error {
 public:
  explicit BackendUnavailableError(const std::string& what) : std::runtime_error(what) {}
};

class MalformedResponseError : public std::runtime_error {
 public:
  explicit MalformedResponseError(const std::string& what) : std::runtime_error(what) {}
};

// Lexicon file: one entry per line, "surface<TAB>type", UTF-8.
GazetteerBackend load_gazetteer(const std::filesystem::path& path);

// Mentions sorted by start offset. Offsets out of range in a backend response
// are rejected (MalformedResponseError), never clamped.
std::vector<EntityMention> extract_entities(std::string_view text, const NerBackend& backend);

// Entity identity: case-folded surface with internal whitespace collapsed,
// plus the type unless options.include_type is false.
EntityVectors build_vectors(std::span<const EntityMention> predicted,
                            std::span<const EntityMention> reference,
                            const VectorOptions& options = {});

// Cosine of the angle between the two count vectors. Both all-zero -> 1
// (entity-free texts), exactly one all-zero -> 0.
double cones(const EntityVectors& vectors);

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Greedy one-to-one matching: equal normalized identity and
// |start_pred - start_ref| <= window; candidate pairs considered in order of
// smallest offset difference, then earliest reference offset. F1 is 0 when
// P + R is 0, and 1 when both lists are empty.
PrecisionRecallF1 windowed_f1(std::span<const EntityMention> predicted,
                              std::span<const EntityMention> reference, std::size_t window,
                              const VectorOptions& options = {});

}  // namespace clocrc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clocrc {

// Edit-operation counts from aligning a hypothesis against a reference.
// Invariants: substitutions + deletions + matches == reference length;
// distance() is the minimal unit-cost edit distance.
struct EditOps {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t matches = 0;

  std::size_t distance() const { return substitutions + deletions + insertions; }
  std::size_t reference_length() const { return substitutions + deletions + matches; }
};

// Character error rate. May exceed 1 when insertions dominate.
struct CerValue {
  double value = 0.0;
};

// Error reduction percentage. At most 100, unbounded below.
struct ErpValue {
  double value = 0.0;
};

enum class UnicodeForm { None, CanonicalComposed };

struct NormalizationPolicy {
  UnicodeForm unicode_form = UnicodeForm::CanonicalComposed;
  bool collapse_whitespace = true;
  bool case_fold = false;
};

class EmptyReferenceError : public std::runtime_error {
 public:
  EmptyReferenceError() : std::runtime_error("reference text is empty after normalization") {}
};

class ZeroOriginalError : public std::runtime_error {
 public:
  ZeroOriginalError() : std::runtime_error("original CER is zero; ERP is undefined") {}
};

class EmptyInputError : public std::runtime_error {
 public:
  explicit EmptyInputError(const std::string& what) : std::runtime_error(what) {}
};

// Applies the policy: canonical composition, whitespace-run collapsing to a
// single space, optional case folding. Idempotent.
std::u32string normalize(std::u32string_view text, const NormalizationPolicy& policy);
std::string normalize(std::string_view text, const NormalizationPolicy& policy);

// Minimal-edit-distance decomposition against the reference (unit costs).
// Among minimal alignments, the one with the most substitutions (fewest
// delete+insert pairs) is chosen, so the split is deterministic.
// Throws EmptyReferenceError when the reference is empty.
EditOps align_ops(std::u32string_view reference, std::u32string_view hypothesis);
EditOps align_ops(std::string_view reference, std::string_view hypothesis);

// (S + D + I) / (S + D + C) on policy-normalized texts.
CerValue cer(std::string_view reference, std::string_view hypothesis,
             const NormalizationPolicy& policy = {});

// ((cer_orig - cer_corrected) / cer_orig) * 100.
// Throws ZeroOriginalError when cer_orig is zero.
ErpValue erp(CerValue cer_orig, CerValue cer_corrected);

enum class Aggregation { Median, Mean };

// Median: middle element, or the mean of the two middle elements for even
// counts. Mean: arithmetic mean. Throws EmptyInputError on empty input.
double aggregate(std::vector<double> values, Aggregation mode);

}  // namespace clocrc

#include "clocrc/text_metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "clocrc/unicode.hpp"

namespace clocrc {

std::u32string normalize(std::u32string_view text, const NormalizationPolicy& policy) {
  std::u32string work;
  if (policy.unicode_form == UnicodeForm::CanonicalComposed) {
    work = uni::compose_canonical(text);
  } else {
    work.assign(text.begin(), text.end());
  }
  if (policy.case_fold) {
    for (char32_t& cp : work) cp = uni::fold_case(cp);
  }
  if (policy.collapse_whitespace) {
    std::u32string collapsed;
    collapsed.reserve(work.size());
    bool in_run = false;
    for (char32_t cp : work) {
      if (uni::is_space(cp)) {
        if (!in_run) collapsed.push_back(U' ');
        in_run = true;
      } else {
        collapsed.push_back(cp);
        in_run = false;
      }
    }
    work = std::move(collapsed);
  }
  return work;
}

std::string normalize(std::string_view text, const NormalizationPolicy& policy) {
  return uni::encode_utf8(normalize(uni::decode_utf8(text), policy));
}

namespace {

struct Cell {
  std::uint32_t dist;
  std::uint32_t ins;

  bool operator<(const Cell& o) const {
    return dist != o.dist ? dist < o.dist : ins < o.ins;
  }
};

}  // namespace

EditOps align_ops(std::u32string_view reference, std::u32string_view hypothesis) {
  if (reference.empty()) throw EmptyReferenceError();

  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();

  // Two-row DP over (distance, insertions), minimized lexicographically.
  // Along any path D - I == i - j, so minimizing insertions at equal distance
  // maximizes substitutions over delete+insert pairs.
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = {static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j)};
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {static_cast<std::uint32_t>(i), 0};
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t sub = reference[i - 1] == hypothesis[j - 1] ? 0 : 1;
      Cell best{prev[j - 1].dist + sub, prev[j - 1].ins};
      const Cell del{prev[j].dist + 1, prev[j].ins};
      const Cell ins{cur[j - 1].dist + 1, cur[j - 1].ins + 1};
      if (del < best) best = del;
      if (ins < best) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }

  const std::size_t dist = prev[m].dist;
  const std::size_t insertions = prev[m].ins;

  EditOps ops;
  ops.insertions = insertions;
  // D - I == n - m for the full alignment.
  ops.deletions = static_cast<std::size_t>(static_cast<std::int64_t>(insertions) +
                                           static_cast<std::int64_t>(n) -
                                           static_cast<std::int64_t>(m));
  ops.substitutions = dist - ops.deletions - ops.insertions;
  ops.matches = n - ops.substitutions - ops.deletions;
  return ops;
}

EditOps align_ops(std::string_view reference, std::string_view hypothesis) {
  return align_ops(uni::decode_utf8(reference), uni::decode_utf8(hypothesis));
}

CerValue cer(std::string_view reference, std::string_view hypothesis,
             const NormalizationPolicy& policy) {
  const std::u32string ref = normalize(uni::decode_utf8(reference), policy);
  const std::u32string hyp = normalize(uni::decode_utf8(hypothesis), policy);
  if (ref.empty()) throw EmptyReferenceError();
  const EditOps ops = align_ops(ref, hyp);
  return CerValue{static_cast<double>(ops.distance()) /
                  static_cast<double>(ops.reference_length())};
}

ErpValue erp(CerValue cer_orig, CerValue cer_corrected) {
  if (cer_orig.value <= 0.0) throw ZeroOriginalError();
  return ErpValue{(cer_orig.value - cer_corrected.value) / cer_orig.value * 100.0};
}

double aggregate(std::vector<double> values, Aggregation mode) {
  if (values.empty()) throw EmptyInputError("aggregate: empty input");
  if (mode == Aggregation::Mean) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace clocrc

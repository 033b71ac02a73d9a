// include/slt/metrics/levenshtein.h
//
// Copyright 2026  The slt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SLT_METRICS_LEVENSHTEIN_H_
#define SLT_METRICS_LEVENSHTEIN_H_

#include <algorithm>
#include <cstddef>
#include <vector>

namespace slt {

// Edit operations turning a reference into a hypothesis.
struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;  // hypothesis tokens with no reference counterpart
  std::size_t deletions = 0;   // reference tokens missing from the hypothesis
  std::size_t matches = 0;

  std::size_t distance() const { return substitutions + insertions + deletions; }
  EditCounts &operator+=(const EditCounts &o) {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    matches += o.matches;
    return *this;
  }
};

/// Unit-cost edit distance with a backtraced decomposition. Among optimal
/// alignments the backtrace prefers match/substitution, then deletion.
template <typename T>
EditCounts Levenshtein(const std::vector<T> &ref, const std::vector<T> &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }

  EditCounts c;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] == hyp[j - 1]) ++c.matches;
      else ++c.substitutions;
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++c.deletions;
      --i;
    } else {
      ++c.insertions;
      --j;
    }
  }
  return c;
}

}  // namespace slt

#endif  // SLT_METRICS_LEVENSHTEIN_H_

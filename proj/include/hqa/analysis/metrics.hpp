// Copyright 2026 The HQA Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace hqa::analysis {

/// Largest number of clusters accepted by clustering_accuracy.
inline constexpr std::size_t kMaxPermutationClusters = 8;

/// Best fraction correct over all cluster-to-class relabelings.
/// Throws when more than kMaxPermutationClusters labels are involved.
[[nodiscard]] double clustering_accuracy(const std::vector<int> &assignment,
                                         const std::vector<int> &labels);
/// Plain fraction of equal entries.
[[nodiscard]] double classification_accuracy(const std::vector<int> &predicted,
                                             const std::vector<int> &labels);
/// Rank correlation with average ranks for ties.
[[nodiscard]] double spearman(const std::vector<double> &a, const std::vector<double> &b);

} // namespace hqa::analysis

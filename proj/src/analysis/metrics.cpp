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

#include "hqa/analysis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hqa::analysis {

namespace {

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("metric inputs differ in length (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
    if (a == 0) {
        throw std::invalid_argument("metric inputs are empty");
    }
}

/// Dense 0..m-1 codes for the distinct values of v.
std::vector<std::size_t> encode(const std::vector<int> &v, std::size_t &distinct) {
    std::map<int, std::size_t> codes;
    for (int x : v) {
        codes.emplace(x, 0);
    }
    std::size_t next = 0;
    for (auto &[key, code] : codes) {
        code = next++;
    }
    distinct = codes.size();
    std::vector<std::size_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = codes.at(v[i]);
    }
    return out;
}

std::vector<double> ranks(const std::vector<double> &x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            r[order[k]] = avg;
        }
        i = j + 1;
    }
    return r;
}

} // namespace

double clustering_accuracy(const std::vector<int> &assignment, const std::vector<int> &labels) {
    check_lengths(assignment.size(), labels.size());
    std::size_t k_a = 0;
    std::size_t k_l = 0;
    const auto a = encode(assignment, k_a);
    const auto l = encode(labels, k_l);
    const std::size_t k = std::max(k_a, k_l);
    if (k > kMaxPermutationClusters) {
        throw std::invalid_argument("clustering_accuracy: " + std::to_string(k) +
                                    " clusters exceed the permutation limit of " +
                                    std::to_string(kMaxPermutationClusters));
    }
    // counts[c][y]: points of cluster c carrying class y.
    std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++counts[a[i]][l[i]];
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hits = 0;
        for (std::size_t c = 0; c < k; ++c) {
            hits += counts[c][perm[c]];
        }
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(a.size());
}

double classification_accuracy(const std::vector<int> &predicted, const std::vector<int> &labels) {
    check_lengths(predicted.size(), labels.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        hits += predicted[i] == labels[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double spearman(const std::vector<double> &a, const std::vector<double> &b) {
    check_lengths(a.size(), b.size());
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace hqa::analysis

// Copyright 2026 The wigner_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wigner_lab/basis.hpp"
#include "wigner_lab/rng.hpp"
#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

/// Labelled outcome counts and relative frequencies.
///
/// Built either from counts (empirical; total = sum of counts) or from
/// probabilities (analytic; counts are zero and total is 0).
class OutcomeDistribution {
   public:
    OutcomeDistribution() = default;

    static OutcomeDistribution from_counts(std::vector<std::string> labels, std::vector<std::uint64_t> counts) {
        if (labels.size() != counts.size()) {
            throw std::invalid_argument("label/count size mismatch");
        }
        OutcomeDistribution d;
        d.labels_ = std::move(labels);
        d.counts_ = std::move(counts);
        d.total_ = 0;
        for (auto c : d.counts_) {
            d.total_ += c;
        }
        d.freqs_.resize(d.counts_.size(), 0.0);
        if (d.total_ > 0) {
            for (std::size_t k = 0; k < d.counts_.size(); k++) {
                d.freqs_[k] = static_cast<double>(d.counts_[k]) / static_cast<double>(d.total_);
            }
        }
        return d;
    }

    static OutcomeDistribution from_probabilities(std::vector<std::string> labels, std::vector<double> probs) {
        if (labels.size() != probs.size()) {
            throw std::invalid_argument("label/probability size mismatch");
        }
        for (double p : probs) {
            if (!(p >= 0) || p > 1 + 1e-12) {
                throw std::invalid_argument("probability out of [0, 1]: " + std::to_string(p));
            }
        }
        OutcomeDistribution d;
        d.labels_ = std::move(labels);
        d.counts_.assign(d.labels_.size(), 0);
        d.freqs_ = std::move(probs);
        return d;
    }

    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<std::uint64_t> &counts() const { return counts_; }
    const std::vector<double> &frequencies() const { return freqs_; }
    std::uint64_t total() const { return total_; }
    std::size_t size() const { return labels_.size(); }

    std::size_t index_of(const std::string &label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw std::out_of_range("no outcome labelled '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }
    double frequency(const std::string &label) const { return freqs_[index_of(label)]; }
    std::uint64_t count(const std::string &label) const { return counts_[index_of(label)]; }

    bool operator==(const OutcomeDistribution &) const = default;

   private:
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> counts_;
    std::vector<double> freqs_;
    std::uint64_t total_ = 0;
};

inline OutcomeDistribution born_probabilities(const StateVector &v, std::span<const MeasurementBasis> bases) {
    auto coeffs = change_basis(v, bases);
    std::vector<double> probs(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); k++) {
        probs[k] = std::norm(coeffs[k]);
    }
    return OutcomeDistribution::from_probabilities(coeffs.labels(), std::move(probs));
}

inline OutcomeDistribution born_probabilities(const StateVector &v, const MeasurementBasis &basis) {
    return born_probabilities(v, std::span<const MeasurementBasis>(&basis, 1));
}

struct MeasurementResult {
    std::vector<std::string> labels;  // one per measured subsystem
    std::size_t outcome_index;        // index into the product basis
    StateVector posterior;
};

/// Projective measurement in a product basis. The posterior is the product
/// basis vector of the sampled outcome.
template <typename Rng>
MeasurementResult measure(const StateVector &v, std::span<const MeasurementBasis> bases, Rng &rng) {
    auto coeffs = change_basis(v, bases);
    double u = uniform01(rng);
    double acc = 0;
    std::size_t chosen = coeffs.size();
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < coeffs.size(); k++) {
        double p = std::norm(coeffs[k]);
        if (p > 0) {
            last_nonzero = k;
        }
        acc += p;
        if (chosen == coeffs.size() && u < acc) {
            chosen = k;
        }
    }
    // Rounding can leave the cumulative sum just under u.
    if (chosen == coeffs.size()) {
        chosen = last_nonzero;
    }

    std::vector<std::string> labels;
    std::vector<Amplitude> post{1.0};
    std::size_t rem = chosen;
    std::size_t stride = coeffs.size();
    for (const auto &basis : bases) {
        stride /= basis.dim();
        std::size_t k = rem / stride;
        rem %= stride;
        labels.push_back(basis.labels()[k]);
        post = kron(post, basis.vector(k));
    }
    return {std::move(labels), chosen, StateVector(std::move(post))};
}

template <typename Rng>
MeasurementResult measure(const StateVector &v, const MeasurementBasis &basis, Rng &rng) {
    return measure(v, std::span<const MeasurementBasis>(&basis, 1), rng);
}

}  // namespace wigner_lab

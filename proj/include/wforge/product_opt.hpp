// Copyright 2026 The WitnessForge Authors
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

#include <cstdint>
#include <vector>

#include "wforge/linalg.hpp"

namespace wforge {

inline constexpr std::uint64_t kDefaultSeed = 1234567;

/// mu_1 (x) mu_2 (x) ... (x) mu_n with unit-norm factors.
class ProductState {
   public:
    explicit ProductState(std::vector<ComplexVector> factors);

    const std::vector<ComplexVector> &factors() const noexcept {
        return factors_;
    }
    std::size_t parties() const noexcept {
        return factors_.size();
    }
    Dims dims() const;
    ComplexVector tensor() const;

   private:
    std::vector<ComplexVector> factors_;
};

enum class Extremum { max, min };

struct SeesawOptions {
    int restarts = 32;
    std::uint64_t seed = kDefaultSeed;
    int max_rounds = 500;
    /// A restart stops once a full round improves the objective by less than this.
    double tolerance = 1e-12;
};

struct OptResult {
    /// <mu|m|mu> at `state`. A lower bound on the true supremum (max) or an
    /// upper bound on the true infimum (min).
    double value;
    ProductState state;
    int restarts_used;
    /// Every restart stabilized before hitting max_rounds.
    bool converged;
};

/// One see-saw run from a fixed starting product state.
struct LocalRun {
    double value;
    ProductState state;
    int rounds;
    bool converged;
    /// Objective after each single-party update, when requested.
    std::vector<double> trace;
};

/// Coordinate ascent (or descent) over the factors of a product state. Each
/// single-party update replaces mu_k by the extreme eigenvector of the operator
/// obtained by contracting m with every other factor, so the objective moves
/// monotonically.
LocalRun seesaw_local(const ComplexMatrix &m, Extremum mode, ProductState start, int max_rounds,
                      double tolerance, bool record_trace = false);

/// Deterministic uniformly random product state: restart `index` of stream `seed`.
ProductState random_product_state(const Dims &dims, std::uint64_t seed, std::uint64_t index);

/// Best of `options.restarts` see-saw runs from seeded random product states.
/// Ties resolve to the lowest restart index, so the result does not depend on
/// the order in which restarts finish. Throws NotHermitian.
OptResult optimize_product(const ComplexMatrix &m, Extremum mode, const SeesawOptions &options = {});

/// sup over unit product states of <mu|m|mu>.
OptResult max_product_expectation(const ComplexMatrix &m, int restarts, std::uint64_t seed);
/// inf over unit product states of <mu|m|mu>.
OptResult min_product_expectation(const ComplexMatrix &m, int restarts, std::uint64_t seed);

}  // namespace wforge

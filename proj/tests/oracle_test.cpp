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

#include "wforge/oracle.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "wforge/errors.hpp"
#include "wforge/qstate.hpp"

using namespace wforge;
using namespace wforge::testing;

namespace {

template <typename F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::ParseError;
}

}  // namespace

TEST(oracle, supported_dims) {
    EXPECT_TRUE(oracle_supports({5}));
    EXPECT_TRUE(oracle_supports({2, 2}));
    EXPECT_TRUE(oracle_supports({3, 4}));
    EXPECT_TRUE(oracle_supports({2, 2, 2}));
    EXPECT_FALSE(oracle_supports({2, 2, 4}));
    EXPECT_FALSE(oracle_supports({5, 2}));
    EXPECT_FALSE(oracle_supports({2, 2, 2, 2}));
    EXPECT_EQ(code_of([] { grid_search(ComplexMatrix::identity({2, 2, 4}), Extremum::min, 32); }),
              ErrorCode::UnsupportedDims);
    EXPECT_EQ(code_of([] { grid_search(ComplexMatrix::identity({2, 2}), Extremum::min, 8); }),
              ErrorCode::ParamOutOfRange);
}

TEST(oracle, single_party_is_exact) {
    Rng rng(51);
    ComplexMatrix m = random_hermitian({3}, rng);
    std::vector<double> ref = reference_eigenvalues(m);
    EXPECT_NEAR(grid_product_extremum(m, Extremum::min, 32), ref.front(), 1e-10);
    EXPECT_NEAR(grid_product_extremum(m, Extremum::max, 32), ref.back(), 1e-10);
}

TEST(oracle, isotropic_product_bound) {
    for (double q : {0.1, 0.2, 0.3}) {
        GridResult r = grid_search(isotropic(q).matrix(), Extremum::max, 64, false);
        EXPECT_NEAR(r.grid_value, (1 + q) / 4, 1e-4);
        EXPECT_LE(r.grid_value, (1 + q) / 4 + 1e-12);
        EXPECT_EQ(r.value, r.grid_value);
    }
}

TEST(oracle, product_operators_factorize) {
    Rng rng(52);
    ComplexMatrix a = random_density({2}, rng);
    ComplexMatrix b = random_density({2}, rng);
    ComplexMatrix c = random_density({2}, rng);
    ComplexMatrix abc = kron(kron(a, b), c);
    double expected = 1;
    for (const auto &m : {a, b, c}) {
        expected *= reference_eigenvalues(m).front();
    }
    EXPECT_NEAR(grid_product_extremum(abc, Extremum::min, 32), expected, 1e-9);
}

TEST(oracle, grid_is_feasible_and_polish_improves) {
    Rng rng(53);
    for (int t = 0; t < 5; ++t) {
        ComplexMatrix m = random_hermitian({2, 3}, rng);
        GridResult r = grid_search(m, Extremum::min, 32, true);
        EXPECT_NEAR(expectation(m, r.grid_state.tensor()), r.grid_value, 1e-12);
        EXPECT_NEAR(expectation(m, r.state.tensor()), r.value, 1e-12);
        EXPECT_LE(r.value, r.grid_value + 1e-12);
        EXPECT_GT(r.grid_points, 0u);
    }
}

TEST(oracle, agrees_with_seesaw_on_random_operators) {
    Rng rng(54);
    for (int t = 0; t < 8; ++t) {
        ComplexMatrix m = random_hermitian({2, 2}, rng);
        const double grid = grid_search(m, Extremum::min, 128, false).grid_value;
        const double seesaw = min_product_expectation(m, 32, kDefaultSeed).value;
        // The grid is a feasible set, so it can only sit above the true minimum.
        EXPECT_GE(grid, seesaw - 1e-9);
        EXPECT_NEAR(grid, seesaw, 1e-3);
    }
}

TEST(oracle, exhaustive_check_of_known_witnesses) {
    Witness w(WitnessForm::sigma_minus_c, 3.0 / 16, flip_shifted_state());
    WitnessReport r = exhaustive_witness_check(w, 64);
    EXPECT_TRUE(r.is_witness);
    EXPECT_FALSE(r.min_is_upper_bound);
    EXPECT_NEAR(r.min_product_expectation, 0.0, 1e-9);

    Witness bad(WitnessForm::c_minus_sigma, 0.25, isotropic(0.2));
    EXPECT_FALSE(exhaustive_witness_check(bad, 32).is_witness);
}

TEST(oracle, refinement_never_worsens) {
    Rng rng(55);
    for (int t = 0; t < 5; ++t) {
        ComplexMatrix m = random_hermitian({2, 2}, rng);
        double prev_max = grid_search(m, Extremum::max, 32, false).grid_value;
        double prev_min = grid_search(m, Extremum::min, 32, false).grid_value;
        for (int res : {64, 128}) {
            const double hi = grid_search(m, Extremum::max, res, false).grid_value;
            const double lo = grid_search(m, Extremum::min, res, false).grid_value;
            EXPECT_GE(hi, prev_max - 1e-12);
            EXPECT_LE(lo, prev_min + 1e-12);
            prev_max = hi;
            prev_min = lo;
        }
    }
}

TEST(oracle, trivial_values) {
    ComplexMatrix flat = Complex(0.25) * ComplexMatrix::identity({2, 2});
    EXPECT_NEAR(grid_product_extremum(flat, Extremum::max, 32), 0.25, 1e-15);
    EXPECT_NEAR(grid_product_extremum(flat, Extremum::min, 32), 0.25, 1e-15);
    EXPECT_NEAR(grid_product_extremum(psi_plus_projector(), Extremum::max, 64), 0.5, 1e-6);
    EXPECT_NEAR(grid_product_extremum(isotropic(0.2).matrix(), Extremum::max, 64), 0.3, 1e-6);
}

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

#include "wforge/qstate.hpp"

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "wforge/errors.hpp"

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

ComplexMatrix reduce_to_system(const PureState &psi, std::size_t system_parties) {
    std::vector<std::size_t> keep(system_parties);
    std::iota(keep.begin(), keep.end(), 1);
    return partial_trace(ComplexMatrix::projector(psi.vector()), keep);
}

}  // namespace

TEST(qstate, density_validation) {
    EXPECT_EQ(code_of([] { DensityMatrix(ComplexMatrix({2}, {0.5, 0.1, 0.2, 0.5})); }), ErrorCode::NotHermitian);
    EXPECT_EQ(code_of([] { DensityMatrix(ComplexMatrix::identity({2})); }), ErrorCode::InvalidState);
    EXPECT_EQ(code_of([] { DensityMatrix(ComplexMatrix({2}, {1.5, 0, 0, -0.5})); }), ErrorCode::InvalidState);
    // Unnormalized operators are allowed when flagged.
    EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::identity({2}), false));
    EXPECT_EQ(code_of([] { PureState(ComplexVector({2}, {1, 1})); }), ErrorCode::InvalidState);
    EXPECT_NO_THROW(PureState(ComplexVector({2}, {1, 1}), false));
}

TEST(qstate, isotropic_spectrum_closed_form) {
    for (double q : {0.0, 0.1, 0.2, 0.3, 0.5, 0.9, 1.0}) {
        SpectralDecomposition sd = spectral(isotropic(q));
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(sd.eigenvalues[i], (1 - q) / 4, 1e-12);
        }
        EXPECT_NEAR(sd.eigenvalues[3], (1 + 3 * q) / 4, 1e-12);
        // The top eigenvector is |psi+> (unless the spectrum is flat).
        if (q > 0) {
            EXPECT_NEAR(std::abs(inner(sd.eigenvectors[3], bell_state().vector())), 1.0, 1e-12);
        }
        // Equal to the hand-written q|psi+><psi+| + (1-q) I/4.
        EXPECT_LT(max_abs_diff(isotropic(q).matrix(), pi_p(q)), 1e-16);
    }
    EXPECT_EQ(code_of([] { isotropic(-0.1); }), ErrorCode::ParamOutOfRange);
    EXPECT_EQ(code_of([] { isotropic(1.5); }), ErrorCode::ParamOutOfRange);
}

TEST(qstate, flip_shifted_state_is_scaled_partial_transpose) {
    ComplexMatrix gamma = Complex(0.25) * partial_transpose(psi_plus_projector(), 2);
    ComplexMatrix expected = flip_shifted_state().matrix() - Complex(3.0 / 16) * ComplexMatrix::identity({2, 2});
    EXPECT_LE(max_abs_diff(gamma, expected), 1e-15);

    SpectralDecomposition sd = spectral(flip_shifted_state());
    EXPECT_NEAR(sd.eigenvalues[0], 1.0 / 16, 1e-14);
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_NEAR(sd.eigenvalues[i], 5.0 / 16, 1e-14);
    }
    const double h = 1 / std::sqrt(2.0);
    ComplexVector singlet({2, 2}, {0.0, h, -h, 0.0});
    EXPECT_NEAR(std::abs(inner(sd.eigenvectors[0], singlet)), 1.0, 1e-12);
}

TEST(qstate, purification_roundtrip_random) {
    Rng rng(21);
    for (const Dims &dims : {Dims{2}, Dims{3}, Dims{2, 2}, Dims{2, 3}}) {
        for (std::size_t rank : {std::size_t{0}, std::size_t{1}, std::size_t{2}}) {
            DensityMatrix d(random_density(dims, rng, rank));
            PureState psi = purify(d);
            EXPECT_EQ(psi.dims().size(), dims.size() + 1);
            EXPECT_EQ(psi.dims().back(), rank == 0 ? total_dim(dims) : rank);
            EXPECT_NEAR(psi.squared_norm(), 1.0, 1e-12);
            ComplexMatrix back = reduce_to_system(psi, dims.size());
            EXPECT_LT((back - d.matrix()).frobenius_norm(), 1e-10);
        }
    }
}

TEST(qstate, purification_with_padded_ancilla) {
    DensityMatrix d = isotropic(0.4);
    PureState psi = purify(d, 6);
    EXPECT_EQ(psi.dims(), (Dims{2, 2, 6}));
    EXPECT_LT((reduce_to_system(psi, 2) - d.matrix()).frobenius_norm(), 1e-12);
    EXPECT_EQ(code_of([&] { purify(d, 3); }), ErrorCode::SelectionOutOfRange);
    EXPECT_EQ(code_of([] { purify(DensityMatrix(ComplexMatrix::identity({2}), false)); }), ErrorCode::NotNormalized);
}

TEST(qstate, maximally_mixed_qubit_purifies_to_bell) {
    // The tie-break orders |1> before |0>, so the ancilla labels come out
    // swapped relative to (|00> + |11>)/sqrt(2).
    SpectralDecomposition sd = spectral(maximally_mixed({2}));
    EXPECT_EQ(sd.eigenvectors[0][1], Complex(1));
    PureState psi = purify(maximally_mixed({2}));
    EXPECT_EQ(psi.dims(), (Dims{2, 2}));
    EXPECT_LT(max_abs_diff(ComplexMatrix::projector(psi.vector()), psi_plus_flipped_projector()), 1e-15);
}

TEST(qstate, isotropic_eigenbasis_order) {
    // Degenerate (1-q)/4 block: |10>, |01>, (|00> - |11>)/sqrt(2), then |psi+>.
    SpectralDecomposition sd = spectral(isotropic(0.3));
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(inner(sd.eigenvectors[0], ComplexVector::basis({2, 2}, 2))), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(sd.eigenvectors[1], ComplexVector::basis({2, 2}, 1))), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(sd.eigenvectors[2], ComplexVector({2, 2}, {h, 0.0, 0.0, -h}))), 1.0, 1e-12);
}

TEST(qstate, partial_purification_keeps_selected_weight) {
    Rng rng(22);
    DensityMatrix d(random_density({2, 2}, rng));
    SpectralDecomposition sd = spectral(d);
    PurificationSelection sel({{3, 0}, {1, 1}}, 2);
    PureState phi = partial_purify(d, sel);
    EXPECT_FALSE(phi.normalized());
    EXPECT_EQ(phi.dims(), (Dims{2, 2, 2}));
    EXPECT_NEAR(phi.squared_norm(), sd.eigenvalues[3] + sd.eigenvalues[1], 1e-12);
    // Distinct slots: the reduced operator is the selected part of the spectrum.
    ComplexMatrix expected = Complex(sd.eigenvalues[3]) * ComplexMatrix::projector(sd.eigenvectors[3]) +
                             Complex(sd.eigenvalues[1]) * ComplexMatrix::projector(sd.eigenvectors[1]);
    EXPECT_LT(max_abs_diff(reduce_to_system(phi, 2), expected), 1e-12);
    EXPECT_TRUE(has_max_eigenvalue(sel, sd));
    EXPECT_FALSE(has_max_eigenvalue(PurificationSelection({{0, 0}, {2, 1}}, 2), sd));
}

TEST(qstate, partial_purification_rejects_kernel_indices) {
    DensityMatrix d = DensityMatrix::from_pure(bell_state());
    EXPECT_EQ(code_of([&] { partial_purify(d, PurificationSelection({{0, 0}}, 2)); }), ErrorCode::SelectionOutOfRange);
    EXPECT_EQ(code_of([&] { partial_purify(d, PurificationSelection({{7, 0}}, 2)); }), ErrorCode::SelectionOutOfRange);
}

TEST(qstate, degenerate_top_counts_any_top_index) {
    SpectralDecomposition sd = spectral(flip_shifted_state());
    for (std::size_t i = 1; i < 4; ++i) {
        EXPECT_TRUE(has_max_eigenvalue(PurificationSelection({{i, 0}}, 1), sd));
    }
    EXPECT_FALSE(has_max_eigenvalue(PurificationSelection({{0, 0}}, 1), sd));
}

TEST(qstate, selection_parse_and_print) {
    PurificationSelection sel = PurificationSelection::parse("3:0,2:1", 2);
    EXPECT_EQ(sel.pairs(), (std::vector<PurificationSelection::Pair>{{3, 0}, {2, 1}}));
    EXPECT_EQ(sel.to_string(), "3:0,2:1");
    EXPECT_EQ(PurificationSelection::parse(sel.to_string(), 2), sel);
    EXPECT_EQ(sel.canonical().to_string(), "2:1,3:0");

    EXPECT_EQ(code_of([] { PurificationSelection::parse("3-0", 2); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { PurificationSelection::parse("a:0", 2); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { PurificationSelection::parse("3:2", 2); }), ErrorCode::SelectionOutOfRange);
    EXPECT_EQ(code_of([] { PurificationSelection::parse("3:0,3:1", 2); }), ErrorCode::SelectionOutOfRange);
    EXPECT_EQ(code_of([] { PurificationSelection::parse("3:0,2:0", 2); }), ErrorCode::SelectionOutOfRange);
    EXPECT_EQ(code_of([] { PurificationSelection::parse("3:0,2:1,1:0", 2); }), ErrorCode::SelectionOutOfRange);
}

TEST(qstate, full_selection_is_the_purification) {
    Rng rng(23);
    DensityMatrix d(random_density({2, 2}, rng));
    PurificationSelection all({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 4);
    PureState full = partial_purify(d, all);
    EXPECT_LT((full.vector() - purify(d).vector()).norm(), 1e-15);
    EXPECT_NEAR(full.squared_norm(), 1.0, 1e-12);
}

TEST(qstate, purifications_share_the_reduced_state) {
    Rng rng(24);
    for (int t = 0; t < 5; ++t) {
        DensityMatrix d(random_density({2, 3}, rng, 3));
        PureState minimal = purify(d);
        PureState padded = purify(d, 6);
        EXPECT_LT((reduce_to_system(minimal, 2) - reduce_to_system(padded, 2)).frobenius_norm(), 1e-12);
        for (const auto &sel : {PurificationSelection({{5, 0}}, 2), PurificationSelection({{5, 1}, {3, 0}}, 2)}) {
            EXPECT_LE(partial_purify(d, sel).squared_norm(), 1 + 1e-12);
        }
    }
}

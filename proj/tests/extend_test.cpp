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

#include "wforge/extend.hpp"

#include <cmath>
#include <set>

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

// Independent count: brute force over all partial injections of support
// indices into slots, keeping those that use the top index.
std::uint64_t brute_force_count(std::size_t rank, std::size_t d3) {
    std::uint64_t count = 0;
    std::vector<std::size_t> assign(rank, 0);  // 0 = unused, k = slot k-1
    while (true) {
        std::set<std::size_t> slots;
        bool ok = assign[rank - 1] != 0;
        for (std::size_t a : assign) {
            if (a != 0 && !slots.insert(a).second) {
                ok = false;
            }
        }
        count += ok ? 1 : 0;
        std::size_t pos = 0;
        while (pos < rank && ++assign[pos] == d3 + 1) {
            assign[pos++] = 0;
        }
        if (pos == rank) {
            return count;
        }
    }
}

DensityMatrix nondegenerate_state(std::size_t dim, std::size_t rank) {
    std::vector<double> values(dim, 0.0);
    double total = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        values[dim - rank + i] = static_cast<double>(i + 1);
        total += static_cast<double>(i + 1);
    }
    for (double &v : values) {
        v /= total;
    }
    return DensityMatrix(ComplexMatrix::diagonal({dim}, values));
}

Witness isotropic_witness(double q) {
    return make_witness(WitnessForm::c_minus_sigma, isotropic(q), (1 + q) / 4, CheckMode::strict);
}

}  // namespace

TEST(extend, purification_keeps_c_and_product_bound) {
    Witness w = make_witness(WitnessForm::c_minus_sigma, isotropic(0.2), 0.3, CheckMode::strict);
    Witness ext = purify_extend(w);
    EXPECT_EQ(ext.dims(), (Dims{2, 2, 4}));
    EXPECT_EQ(ext.c(), 0.3);
    SpectralDecomposition sd = hermitian_eig(ext.matrix());
    EXPECT_NEAR(sd.min_eigenvalue(), 0.3 - 1.0, 1e-10);
    EXPECT_NEAR(max_product_expectation(ext.sigma().matrix(), 32, kDefaultSeed).value, 0.3, 1e-6);
    WitnessReport r = verify_witness(ext);
    EXPECT_TRUE(r.is_witness);
    EXPECT_GE(r.min_product_expectation, -1e-8);
}

TEST(extend, purification_random_states) {
    Rng rng(41);
    for (int t = 0; t < 4; ++t) {
        DensityMatrix s(random_density({2, 2}, rng, 2));
        CInterval in = admissible_interval(WitnessForm::c_minus_sigma, s);
        Witness w = make_witness(WitnessForm::c_minus_sigma, s, in.lower, CheckMode::strict);
        Witness ext = purify_extend(w);
        EXPECT_EQ(ext.dims(), (Dims{2, 2, 2}));
        EXPECT_NEAR(max_product_expectation(ext.sigma().matrix(), 32, kDefaultSeed).value, in.lower, 1e-6);
    }
}

TEST(extend, trivial_single_party_witness) {
    // W = I/2 - I/2 on one qubit is not itself a witness, but its purification is.
    Witness w1 = make_witness(WitnessForm::c_minus_sigma, maximally_mixed({2}), 0.5, CheckMode::none);
    Witness w12 = purify_extend(w1);
    EXPECT_EQ(w12.dims(), (Dims{2, 2}));
    EXPECT_LT(max_abs_diff(w12.sigma().matrix(), psi_plus_flipped_projector()), 1e-15);
    EXPECT_NEAR(evaluate(w12, DensityMatrix(w12.sigma().matrix())), -0.5, 1e-15);
    EXPECT_TRUE(verify_witness(w12).is_witness);
}

TEST(extend, pure_tails) {
    Witness w = isotropic_witness(0.5);
    Rng rng(42);
    std::vector<PureState> tails{PureState(random_unit({2}, rng)), PureState(random_unit({3}, rng))};
    Witness ext = purify_extend_n(w, tails);
    EXPECT_EQ(ext.dims(), (Dims{2, 2, 4, 2, 3}));
    EXPECT_NEAR(hermitian_eig(ext.sigma().matrix()).max_eigenvalue(), 1.0, 1e-10);

    std::vector<PureState> bad{PureState(ComplexVector({2}, {1, 1}), false)};
    EXPECT_EQ(code_of([&] { append_pure_tails(w, bad); }), ErrorCode::UnnormalizedTail);
}

TEST(extend, partial_purification_examples) {
    const double q = 0.5;
    Witness w = isotropic_witness(q);
    for (const char *text : {"3:0,2:1", "3:0,1:1", "3:1,0:0"}) {
        PurificationSelection sel = PurificationSelection::parse(text, 2);
        Witness ext = partial_purify_extend(w, sel);
        EXPECT_EQ(ext.dims(), (Dims{2, 2, 2}));
        EXPECT_EQ(ext.c(), w.c());
        EXPECT_FALSE(ext.sigma().normalized());
        EXPECT_NEAR(ext.sigma().matrix().trace().real(), (1 + 3 * q) / 4 + (1 - q) / 4, 1e-12);
        WitnessReport r = verify_witness(ext);
        EXPECT_TRUE(r.is_witness) << text;
        // Dropping eigenpairs can only lower the product bound.
        EXPECT_LE(max_product_expectation(ext.sigma().matrix(), 32, kDefaultSeed).value, (1 + q) / 4 + 1e-8);
    }
}

TEST(extend, partial_purification_hypotheses) {
    Witness w = isotropic_witness(0.5);
    EXPECT_EQ(code_of([&] { partial_purify_extend(w, PurificationSelection::parse("0:0,1:1", 2)); }),
              ErrorCode::MaxEigenvalueNotSelected);
    // c' may move up to the selected weight but not past it.
    PurificationSelection sel = PurificationSelection::parse("3:0,2:1", 2);
    Witness moved = partial_purify_extend(w, sel, 0.45);
    EXPECT_EQ(moved.c(), 0.45);
    EXPECT_EQ(code_of([&] { partial_purify_extend(w, sel, 0.3); }), ErrorCode::CPrimeOutOfInterval);
    EXPECT_EQ(code_of([&] { partial_purify_extend(w, sel, 0.75); }), ErrorCode::CPrimeOutOfInterval);

    Witness dual(WitnessForm::sigma_minus_c, 3.0 / 16, flip_shifted_state());
    EXPECT_EQ(code_of([&] { partial_purify_extend(dual, sel); }), ErrorCode::FormNotSupported);
    EXPECT_EQ(code_of([&] { purify_extend(dual); }), ErrorCode::FormNotSupported);
    EXPECT_EQ(code_of([&] { mixed_tensor_extend(dual, {}); }), ErrorCode::FormNotSupported);
}

TEST(extend, count_formula_values) {
    EXPECT_EQ(count_partial_purifications(4, 2), 8u);
    EXPECT_EQ(count_partial_purifications(2, 2), 4u);
    EXPECT_EQ(count_partial_purifications(1, 1), 1u);
    EXPECT_EQ(count_partial_purifications(5, 1), 1u);
    for (std::size_t r = 1; r <= 6; ++r) {
        for (std::size_t d = 1; d <= 6; ++d) {
            EXPECT_EQ(count_partial_purifications(r, d), brute_force_count(r, d)) << r << "," << d;
        }
    }
    EXPECT_EQ(code_of([] { count_partial_purifications(0, 2); }), ErrorCode::ParamOutOfRange);
    EXPECT_EQ(code_of([] { count_partial_purifications(200, 200); }), ErrorCode::CountTooLarge);
}

TEST(extend, enumeration_matches_formula) {
    for (std::size_t r = 1; r <= 5; ++r) {
        for (std::size_t d = 1; d <= r; ++d) {
            SpectralDecomposition sd = spectral(nondegenerate_state(r + 1, r));
            std::vector<PurificationSelection> all = enumerate_partial_purifications(sd, d);
            EXPECT_EQ(all.size(), count_partial_purifications(r, d)) << r << "," << d;
            std::set<std::string> distinct;
            for (const auto &s : all) {
                EXPECT_TRUE(has_max_eigenvalue(s, sd));
                EXPECT_EQ(s.ancilla_dim(), d);
                distinct.insert(s.canonical().to_string());
            }
            EXPECT_EQ(distinct.size(), all.size());
        }
    }
    SpectralDecomposition big = spectral(nondegenerate_state(9, 9));
    EXPECT_EQ(code_of([&] { enumerate_partial_purifications(big, 8); }), ErrorCode::CountTooLarge);
}

TEST(extend, every_enumerated_extension_is_a_witness) {
    Witness w = isotropic_witness(0.6);
    for (const auto &sel : enumerate_partial_purifications(spectral(w.sigma()), 2)) {
        EXPECT_TRUE(verify_witness(partial_purify_extend(w, sel)).is_witness) << sel.to_string();
    }
}

TEST(extend, mixed_tail_scaling) {
    Witness w = isotropic_witness(0.5);
    std::vector<DensityMatrix> tails{DensityMatrix(ComplexMatrix::diagonal({2}, std::vector<double>{0.7, 0.3}))};
    Witness ext = mixed_tensor_extend(w, tails);
    EXPECT_EQ(ext.dims(), (Dims{2, 2, 2}));
    ComplexMatrix factor = ComplexMatrix::diagonal({2}, std::vector<double>{1.0, 3.0 / 7});
    EXPECT_LT(max_abs_diff(ext.sigma().matrix(), kron(isotropic(0.5).matrix(), factor)), 1e-15);
    EXPECT_NEAR(max_product_expectation(ext.sigma().matrix(), 32, kDefaultSeed).value, 0.375, 1e-6);
    EXPECT_TRUE(verify_witness(ext).is_witness);

    std::vector<DensityMatrix> unnormalized{DensityMatrix(ComplexMatrix::identity({2}), false)};
    EXPECT_EQ(code_of([&] { mixed_tensor_extend(w, unnormalized); }), ErrorCode::UnnormalizedTail);
}

TEST(extend, identity_tails_both_forms) {
    Witness dual = make_witness(WitnessForm::sigma_minus_c, flip_shifted_state(), 3.0 / 16, CheckMode::strict);
    for (const Dims &tail : {Dims{4}, Dims{2}, Dims{2, 3}}) {
        Witness ext = identity_extend(dual, tail);
        EXPECT_EQ(ext.form(), WitnessForm::sigma_minus_c);
        EXPECT_EQ(ext.c(), 3.0 / 16);
        EXPECT_FALSE(ext.sigma().normalized());
        EXPECT_TRUE(verify_witness(ext).is_witness);
    }
    Witness primal = isotropic_witness(0.4);
    const std::vector<std::size_t> tail{3};
    Witness ext = identity_extend(primal, tail);
    EXPECT_EQ(ext.dims(), (Dims{2, 2, 3}));
    EXPECT_TRUE(verify_witness(ext).is_witness);
}

TEST(extend, product_extension_keeps_detection) {
    Witness w = isotropic_witness(0.2);
    DensityMatrix rho(pi_p(0.8));
    Rng rng(43);
    std::vector<DensityMatrix> tails{DensityMatrix(random_density({2}, rng))};
    Witness ext = mixed_tensor_extend(w, tails);
    const double base = evaluate(w, rho);
    const double extended = detect_product_extension(ext, rho, tails);
    EXPECT_LT(base, 0);
    EXPECT_LT(extended, 0);
}

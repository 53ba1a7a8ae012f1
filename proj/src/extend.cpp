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

#include <algorithm>
#include <cmath>
#include <string>

#include "wforge/errors.hpp"

namespace wforge {

namespace {

void require_c_minus_sigma(const Witness &w, const char *what) {
    if (w.form() != WitnessForm::c_minus_sigma) {
        fail(ErrorCode::FormNotSupported, std::string(what) + " extends only c I - sigma witnesses");
    }
}

void require_unit_trace(const ComplexMatrix &m, const char *what) {
    if (std::abs(m.trace() - Complex(1.0)) > kStateTolerance) {
        fail(ErrorCode::UnnormalizedTail, std::string(what) + ": tail state does not have unit trace");
    }
}

bool unit_trace(const ComplexMatrix &m) {
    return std::abs(m.trace() - Complex(1.0)) <= kStateTolerance;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        fail(ErrorCode::CountTooLarge, "partial purification count overflows 64 bits");
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t out = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        // out * (n - k + j) is divisible by j at every step.
        out = checked_mul(out, n - k + j) / j;
    }
    return out;
}

}  // namespace

Witness purify_extend(const Witness &w, std::optional<std::size_t> ancilla_dim) {
    require_c_minus_sigma(w, "purify_extend");
    PureState psi = purify(w.sigma(), ancilla_dim);
    return make_witness(WitnessForm::c_minus_sigma, DensityMatrix::from_pure(psi), w.c(), CheckMode::spectral);
}

Witness append_pure_tails(const Witness &w, std::span<const PureState> tails) {
    require_c_minus_sigma(w, "append_pure_tails");
    ComplexMatrix sigma = w.sigma().matrix();
    for (const auto &tail : tails) {
        if (!tail.normalized() || std::abs(tail.squared_norm() - 1.0) > kStateTolerance) {
            fail(ErrorCode::UnnormalizedTail, "pure tail is not normalized");
        }
        sigma = kron(sigma, ComplexMatrix::projector(tail.vector()));
    }
    return make_witness(WitnessForm::c_minus_sigma, DensityMatrix(std::move(sigma), w.sigma().normalized()), w.c(),
                        CheckMode::spectral);
}

Witness purify_extend_n(const Witness &w, std::span<const PureState> tails) {
    return append_pure_tails(purify_extend(w), tails);
}

Witness partial_purify_extend(const Witness &w, const PurificationSelection &sel, std::optional<double> c_prime) {
    require_c_minus_sigma(w, "partial_purify_extend");
    SpectralDecomposition sd = spectral(w.sigma());
    if (!has_max_eigenvalue(sel, sd)) {
        fail(ErrorCode::MaxEigenvalueNotSelected,
             "selection " + sel.to_string() + " does not include a largest eigenvalue");
    }
    PureState phi = partial_purify(w.sigma(), sel);
    const double selected = phi.squared_norm();
    double c = w.c();
    if (c_prime) {
        if (!(*c_prime >= w.c() && *c_prime <= selected - kSpectralGap)) {
            fail(ErrorCode::CPrimeOutOfInterval, "c' must satisfy c <= c' < sum of selected eigenvalues");
        }
        c = *c_prime;
    }
    return make_witness(WitnessForm::c_minus_sigma, DensityMatrix::from_pure(phi), c, CheckMode::spectral);
}

std::uint64_t count_partial_purifications(std::size_t rank, std::size_t d3) {
    if (rank < 1 || d3 < 1) {
        fail(ErrorCode::ParamOutOfRange, "rank and ancilla dimension must be positive");
    }
    std::uint64_t total = 0;
    for (std::size_t i = 1; i <= std::min(rank, d3); ++i) {
        std::uint64_t arrangements = 1;
        for (std::size_t j = 0; j < i; ++j) {
            arrangements = checked_mul(arrangements, d3 - j);
        }
        const std::uint64_t term = checked_mul(binomial(rank - 1, i - 1), arrangements);
        if (__builtin_add_overflow(total, term, &total)) {
            fail(ErrorCode::CountTooLarge, "partial purification count overflows 64 bits");
        }
    }
    return total;
}

std::vector<PurificationSelection> enumerate_partial_purifications(const SpectralDecomposition &sd, std::size_t d3) {
    if (d3 < 1) {
        fail(ErrorCode::ParamOutOfRange, "ancilla dimension must be positive");
    }
    const std::size_t rank = sd.rank(kStateTolerance);
    if (rank == 0) {
        fail(ErrorCode::InvalidState, "state has no support");
    }
    if (rank * d3 > kEnumerationCap) {
        fail(ErrorCode::CountTooLarge, "rank * ancilla dimension = " + std::to_string(rank * d3) + " exceeds " +
                                           std::to_string(kEnumerationCap));
    }
    const std::size_t top = sd.size() - 1;
    const std::size_t first = sd.size() - rank;
    const std::size_t others = rank - 1;

    std::vector<std::vector<PurificationSelection::Pair>> found;
    // Every subset of the non-top support indices, plus the top index.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others); ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t b = 0; b < others; ++b) {
            if (mask & (std::uint64_t{1} << b)) {
                chosen.push_back(first + b);
            }
        }
        chosen.push_back(top);
        if (chosen.size() > d3) {
            continue;
        }
        // Injective slot assignments, by walking a counter over slot tuples.
        std::vector<std::size_t> slots(chosen.size(), 0);
        while (true) {
            std::vector<bool> used(d3, false);
            bool injective = true;
            for (std::size_t s : slots) {
                if (used[s]) {
                    injective = false;
                    break;
                }
                used[s] = true;
            }
            if (injective) {
                std::vector<PurificationSelection::Pair> pairs;
                for (std::size_t k = 0; k < chosen.size(); ++k) {
                    pairs.emplace_back(chosen[k], slots[k]);
                }
                found.push_back(std::move(pairs));
            }
            std::size_t pos = 0;
            while (pos < slots.size() && ++slots[pos] == d3) {
                slots[pos++] = 0;
            }
            if (pos == slots.size()) {
                break;
            }
        }
    }
    std::sort(found.begin(), found.end());
    std::vector<PurificationSelection> out;
    out.reserve(found.size());
    for (auto &pairs : found) {
        out.emplace_back(std::move(pairs), d3);
    }
    return out;
}

Witness mixed_tensor_extend(const Witness &w, std::span<const DensityMatrix> tails) {
    require_c_minus_sigma(w, "mixed_tensor_extend");
    ComplexMatrix sigma = w.sigma().matrix();
    for (const auto &tail : tails) {
        require_unit_trace(tail.matrix(), "mixed_tensor_extend");
        const double top = spectral(tail).max_eigenvalue();
        if (!(top > 1e-300)) {
            fail(ErrorCode::ZeroMaxEigenvalue, "tail state has no positive eigenvalue");
        }
        sigma = kron(sigma, Complex(1.0 / top) * tail.matrix());
    }
    const bool normalized = w.sigma().normalized() && unit_trace(sigma);
    return make_witness(WitnessForm::c_minus_sigma, DensityMatrix(std::move(sigma), normalized), w.c(),
                        CheckMode::spectral);
}

Witness identity_extend(const Witness &w, std::span<const std::size_t> tail_dims) {
    ComplexMatrix sigma = w.sigma().matrix();
    for (std::size_t d : tail_dims) {
        if (d < 1) {
            fail(ErrorCode::DimensionMismatch, "tail dimensions must be positive");
        }
        sigma = kron(sigma, ComplexMatrix::identity({d}));
    }
    const bool normalized = w.sigma().normalized() && unit_trace(sigma);
    return make_witness(w.form(), DensityMatrix(std::move(sigma), normalized), w.c(), CheckMode::spectral);
}

double detect_product_extension(const Witness &w_ext, const DensityMatrix &rho12, std::span<const DensityMatrix> tails) {
    ComplexMatrix rho = rho12.matrix();
    bool normalized = rho12.normalized();
    for (const auto &tail : tails) {
        rho = kron(rho, tail.matrix());
        normalized = normalized && tail.normalized();
    }
    return evaluate(w_ext, DensityMatrix(std::move(rho), normalized));
}

}  // namespace wforge

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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wforge/linalg.hpp"

namespace wforge {

/// Tolerance for state validation (Hermiticity, positivity, unit trace) and
/// for treating an eigenvalue as zero.
inline constexpr double kStateTolerance = 1e-10;

/// Ket, optionally unnormalized (partial purifications keep their norm).
class PureState {
   public:
    explicit PureState(ComplexVector vec, bool normalized = true);

    const ComplexVector &vector() const noexcept {
        return vec_;
    }
    const Dims &dims() const noexcept {
        return vec_.dims();
    }
    bool normalized() const noexcept {
        return normalized_;
    }
    double squared_norm() const {
        return vec_.squared_norm();
    }

   private:
    ComplexVector vec_;
    bool normalized_;
};

/// Hermitian positive semidefinite operator; unit trace when `normalized`.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix mat, bool normalized = true);

    static DensityMatrix from_pure(const PureState &state);

    const ComplexMatrix &matrix() const noexcept {
        return mat_;
    }
    const Dims &dims() const noexcept {
        return mat_.dims();
    }
    bool normalized() const noexcept {
        return normalized_;
    }

   private:
    ComplexMatrix mat_;
    bool normalized_;
};

/// Which eigenpairs go into a (partial) purification and which ancilla basis
/// state each one is attached to.
class PurificationSelection {
   public:
    using Pair = std::pair<std::size_t, std::size_t>;  // (eigen index, ancilla slot)

    PurificationSelection(std::vector<Pair> pairs, std::size_t ancilla_dim);

    /// Parses "eig:slot,eig:slot,..." as printed by the CLI.
    static PurificationSelection parse(const std::string &text, std::size_t ancilla_dim);

    const std::vector<Pair> &pairs() const noexcept {
        return pairs_;
    }
    std::size_t ancilla_dim() const noexcept {
        return ancilla_dim_;
    }
    std::string to_string() const;

    /// Same pairs in ascending eigen-index order.
    PurificationSelection canonical() const;

    friend bool operator==(const PurificationSelection &, const PurificationSelection &) = default;

   private:
    std::vector<Pair> pairs_;
    std::size_t ancilla_dim_;
};

SpectralDecomposition spectral(const DensityMatrix &d);

/// Minimal purification sum_i sqrt(p_i) |e_i>|i> over the nonzero eigenvalues in
/// spectral order. The ancilla is appended as a new last party of dimension
/// rank(d), or `ancilla_dim` (>= rank) with zero padding.
PureState purify(const DensityMatrix &d, std::optional<std::size_t> ancilla_dim = std::nullopt);

/// sum over selected (i, slot) of sqrt(lambda_i) |e_i>|slot>, left unnormalized.
/// Throws SelectionOutOfRange for eigen indices outside the support of d.
PureState partial_purify(const DensityMatrix &d, const PurificationSelection &sel);

/// True when some selected index carries the largest eigenvalue (within 1e-12).
bool has_max_eigenvalue(const PurificationSelection &sel, const SpectralDecomposition &sd);

/// q |psi+><psi+| + (1-q) I/4 on two qubits; ParamOutOfRange unless 0 <= q <= 1.
DensityMatrix isotropic(double q);

/// (|00> + |11>)/sqrt(2)
PureState bell_state();

DensityMatrix maximally_mixed(const Dims &dims);

/// The separable two-qubit state (|psi+><psi+|^T_B)/4 + (3/16) I: diagonal
/// (5/16, 3/16, 3/16, 5/16) with 1/8 coupling |01> and |10>.
DensityMatrix flip_shifted_state();

}  // namespace wforge

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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wforge/errors.hpp"

namespace wforge {

PureState::PureState(ComplexVector vec, bool normalized) : vec_(std::move(vec)), normalized_(normalized) {
    if (normalized_ && std::abs(vec_.norm() - 1.0) > kStateTolerance) {
        fail(ErrorCode::InvalidState, "pure state flagged normalized has norm " + std::to_string(vec_.norm()));
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, bool normalized) : mat_(std::move(mat)), normalized_(normalized) {
    if (!mat_.is_hermitian(kStateTolerance)) {
        fail(ErrorCode::NotHermitian, "density matrix is not Hermitian");
    }
    if (normalized_ && std::abs(mat_.trace() - Complex(1.0)) > kStateTolerance) {
        fail(ErrorCode::InvalidState, "density matrix flagged normalized has trace " +
                                          std::to_string(mat_.trace().real()));
    }
    if (hermitian_eig(mat_).min_eigenvalue() < -kStateTolerance) {
        fail(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &state) {
    return DensityMatrix(ComplexMatrix::projector(state.vector()), state.normalized());
}

PurificationSelection::PurificationSelection(std::vector<Pair> pairs, std::size_t ancilla_dim)
    : pairs_(std::move(pairs)), ancilla_dim_(ancilla_dim) {
    if (ancilla_dim_ == 0) {
        fail(ErrorCode::SelectionOutOfRange, "ancilla dimension must be positive");
    }
    if (pairs_.empty()) {
        fail(ErrorCode::SelectionOutOfRange, "selection is empty");
    }
    if (pairs_.size() > ancilla_dim_) {
        fail(ErrorCode::SelectionOutOfRange, "more selected eigenpairs than ancilla slots");
    }
    std::set<std::size_t> eig;
    std::set<std::size_t> slots;
    for (const auto &[index, slot] : pairs_) {
        if (slot >= ancilla_dim_) {
            fail(ErrorCode::SelectionOutOfRange, "ancilla slot " + std::to_string(slot) + " >= ancilla dimension");
        }
        if (!eig.insert(index).second) {
            fail(ErrorCode::SelectionOutOfRange, "eigen index " + std::to_string(index) + " selected twice");
        }
        if (!slots.insert(slot).second) {
            fail(ErrorCode::SelectionOutOfRange, "ancilla slot " + std::to_string(slot) + " used twice");
        }
    }
}

PurificationSelection PurificationSelection::parse(const std::string &text, std::size_t ancilla_dim) {
    std::vector<Pair> pairs;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            fail(ErrorCode::ParseError, "selection item '" + item + "' is not eig:slot");
        }
        try {
            std::size_t used = 0;
            std::string lhs = item.substr(0, colon);
            std::string rhs = item.substr(colon + 1);
            unsigned long index = std::stoul(lhs, &used);
            if (used != lhs.size()) {
                throw std::invalid_argument(lhs);
            }
            unsigned long slot = std::stoul(rhs, &used);
            if (used != rhs.size()) {
                throw std::invalid_argument(rhs);
            }
            pairs.emplace_back(index, slot);
        } catch (const std::logic_error &) {
            fail(ErrorCode::ParseError, "selection item '" + item + "' is not eig:slot");
        }
    }
    return PurificationSelection(std::move(pairs), ancilla_dim);
}

std::string PurificationSelection::to_string() const {
    std::string out;
    for (const auto &[index, slot] : pairs_) {
        if (!out.empty()) {
            out += ',';
        }
        out += std::to_string(index) + ":" + std::to_string(slot);
    }
    return out;
}

PurificationSelection PurificationSelection::canonical() const {
    auto sorted = pairs_;
    std::sort(sorted.begin(), sorted.end());
    return PurificationSelection(std::move(sorted), ancilla_dim_);
}

SpectralDecomposition spectral(const DensityMatrix &d) {
    return hermitian_eig(d.matrix());
}

namespace {

ComplexVector attach_ancilla(const SpectralDecomposition &sd, const std::vector<PurificationSelection::Pair> &pairs,
                             std::size_t ancilla_dim) {
    Dims dims = sd.dims;
    dims.push_back(ancilla_dim);
    ComplexVector out(dims);
    for (const auto &[index, slot] : pairs) {
        const double weight = std::sqrt(std::max(sd.eigenvalues[index], 0.0));
        const ComplexVector &e = sd.eigenvectors[index];
        for (std::size_t k = 0; k < e.size(); ++k) {
            out[k * ancilla_dim + slot] += weight * e[k];
        }
    }
    return out;
}

}  // namespace

PureState purify(const DensityMatrix &d, std::optional<std::size_t> ancilla_dim) {
    if (!d.normalized()) {
        fail(ErrorCode::NotNormalized, "purify expects a normalized state");
    }
    SpectralDecomposition sd = spectral(d);
    const std::size_t rank = sd.rank(kStateTolerance);
    const std::size_t dim = ancilla_dim.value_or(rank);
    if (dim < rank) {
        fail(ErrorCode::SelectionOutOfRange, "ancilla dimension below the rank of the state");
    }
    // Nonzero eigenvalues are the top `rank` entries of the ascending spectrum.
    std::vector<PurificationSelection::Pair> pairs;
    const std::size_t first = sd.size() - rank;
    for (std::size_t i = first; i < sd.size(); ++i) {
        pairs.emplace_back(i, i - first);
    }
    return PureState(attach_ancilla(sd, pairs, dim), true);
}

PureState partial_purify(const DensityMatrix &d, const PurificationSelection &sel) {
    SpectralDecomposition sd = spectral(d);
    for (const auto &[index, slot] : sel.pairs()) {
        if (index >= sd.size() || sd.eigenvalues[index] <= kStateTolerance) {
            fail(ErrorCode::SelectionOutOfRange,
                 "eigen index " + std::to_string(index) + " is outside the support of the state");
        }
    }
    return PureState(attach_ancilla(sd, sel.pairs(), sel.ancilla_dim()), false);
}

bool has_max_eigenvalue(const PurificationSelection &sel, const SpectralDecomposition &sd) {
    const double top = sd.max_eigenvalue();
    return std::any_of(sel.pairs().begin(), sel.pairs().end(), [&](const auto &pair) {
        return pair.first < sd.size() && std::abs(sd.eigenvalues[pair.first] - top) <= 1e-12;
    });
}

DensityMatrix isotropic(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        fail(ErrorCode::ParamOutOfRange, "isotropic mixing parameter must lie in [0, 1]");
    }
    ComplexMatrix m({2, 2});
    m(0, 0) = (1 + q) / 4;
    m(1, 1) = (1 - q) / 4;
    m(2, 2) = (1 - q) / 4;
    m(3, 3) = (1 + q) / 4;
    m(0, 3) = q / 2;
    m(3, 0) = q / 2;
    return DensityMatrix(std::move(m));
}

PureState bell_state() {
    const double h = 1 / std::sqrt(2.0);
    return PureState(ComplexVector({2, 2}, {h, 0.0, 0.0, h}));
}

DensityMatrix maximally_mixed(const Dims &dims) {
    const double d = static_cast<double>(total_dim(dims));
    return DensityMatrix(Complex(1.0 / d) * ComplexMatrix::identity(dims));
}

DensityMatrix flip_shifted_state() {
    ComplexMatrix m({2, 2});
    m(0, 0) = 5.0 / 16;
    m(1, 1) = 3.0 / 16;
    m(2, 2) = 3.0 / 16;
    m(3, 3) = 5.0 / 16;
    m(1, 2) = 1.0 / 8;
    m(2, 1) = 1.0 / 8;
    return DensityMatrix(std::move(m));
}

}  // namespace wforge

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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wforge {

using Complex = std::complex<double>;

/// Local dimensions of each tensor factor, party 1 first. Party 1 is the most
/// significant digit of a flat basis index.
using Dims = std::vector<std::size_t>;

/// Entrywise tolerance on |m - m^dagger| accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

/// Product of all local dimensions. Throws DimensionMismatch on an empty list
/// or a zero local dimension.
std::size_t total_dim(const Dims &dims);

/// Converts a 1-based party index into a 0-based one, throwing BadPartyIndex
/// when it is outside [1, dims.size()].
std::size_t party_offset(const Dims &dims, std::size_t party);

class ComplexVector {
   public:
    explicit ComplexVector(Dims dims);
    ComplexVector(Dims dims, std::vector<Complex> entries);

    static ComplexVector basis(Dims dims, std::size_t index);

    const Dims &dims() const noexcept {
        return dims_;
    }
    std::size_t size() const noexcept {
        return entries_.size();
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }
    Complex operator[](std::size_t i) const {
        return entries_[i];
    }
    Complex &operator[](std::size_t i) {
        return entries_[i];
    }

    double squared_norm() const;
    double norm() const;
    ComplexVector normalized() const;
    ComplexVector with_dims(Dims dims) const;

   private:
    Dims dims_;
    std::vector<Complex> entries_;
};

/// <a|b>
Complex inner(const ComplexVector &a, const ComplexVector &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);
ComplexVector operator*(Complex scale, const ComplexVector &v);
ComplexVector operator+(const ComplexVector &a, const ComplexVector &b);
ComplexVector operator-(const ComplexVector &a, const ComplexVector &b);

/// Dense square matrix over the space described by its dims.
class ComplexMatrix {
   public:
    explicit ComplexMatrix(Dims dims);
    ComplexMatrix(Dims dims, std::vector<Complex> entries);

    static ComplexMatrix identity(Dims dims);
    static ComplexMatrix diagonal(Dims dims, std::span<const double> values);
    /// |a><b|
    static ComplexMatrix outer(const ComplexVector &a, const ComplexVector &b);
    static ComplexMatrix projector(const ComplexVector &v);

    const Dims &dims() const noexcept {
        return dims_;
    }
    std::size_t size() const noexcept {
        return size_;
    }
    std::size_t parties() const noexcept {
        return dims_.size();
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_[row * size_ + col];
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * size_ + col];
    }

    Complex trace() const;
    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    /// max_ij |m_ij - conj(m_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kHermitianTolerance) const;
    ComplexMatrix with_dims(Dims dims) const;

   private:
    Dims dims_;
    std::size_t size_;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, const ComplexMatrix &m);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v);

/// max_ij |a_ij - b_ij|; dims must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// <v|m|v>, real part only; m is assumed Hermitian.
double expectation(const ComplexMatrix &m, const ComplexVector &v);

/// Kronecker product; the result carries concat(a.dims, b.dims).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Traces out every party not listed in `keep` (1-based). The kept parties stay
/// in their original order.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> keep);

/// Transposes the indices of one party (1-based).
ComplexMatrix partial_transpose(const ComplexMatrix &m, std::size_t party);

/// (<v| on `party`) m (|v> on `party`): the operator left on the remaining
/// parties. Contracting the last party of a single-party matrix yields a 1x1
/// matrix with dims {1}.
ComplexMatrix contract_party(const ComplexMatrix &m, std::size_t party, const ComplexVector &v);

struct SpectralDecomposition {
    Dims dims;
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Orthonormal, eigenvectors[i] belongs to eigenvalues[i].
    std::vector<ComplexVector> eigenvectors;

    double min_eigenvalue() const {
        return eigenvalues.front();
    }
    double max_eigenvalue() const {
        return eigenvalues.back();
    }
    std::size_t size() const noexcept {
        return eigenvalues.size();
    }
    /// Number of eigenvalues above `tol`.
    std::size_t rank(double tol = 1e-10) const;
    ComplexMatrix reconstruct() const;
};

inline constexpr int kJacobiSweepBudget = 100;

/// Cyclic complex Jacobi eigendecomposition.
///
/// Eigenvalues come back ascending. Each eigenvector is rotated so that its
/// first component of modulus > 1e-12 is real and positive, and eigenvectors
/// of (numerically) equal eigenvalues are ordered lexicographically by their
/// entries (real part, then imaginary part). Together these make the output
/// fully deterministic, which the purification enumeration relies on.
///
/// Throws NotHermitian when the input fails the entrywise tolerance and
/// NoConvergence when the sweep budget is exhausted.
SpectralDecomposition hermitian_eig(const ComplexMatrix &m);

}  // namespace wforge

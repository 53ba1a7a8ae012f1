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

#include "wforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "wforge/errors.hpp"

namespace wforge {

namespace {

// Digit strides of a flat index: stride[k] = product of dims[k+1..].
std::vector<std::size_t> strides_of(const Dims &dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * dims[k];
    }
    return strides;
}

void require_same_dims(const Dims &a, const Dims &b, const char *what) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": operand dims differ");
    }
}

void require_same_size(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": operand sizes differ");
    }
}

}  // namespace

std::size_t total_dim(const Dims &dims) {
    if (dims.empty()) {
        fail(ErrorCode::DimensionMismatch, "dims must name at least one party");
    }
    std::size_t d = 1;
    for (std::size_t local : dims) {
        if (local == 0) {
            fail(ErrorCode::DimensionMismatch, "local dimensions must be positive");
        }
        d *= local;
    }
    return d;
}

std::size_t party_offset(const Dims &dims, std::size_t party) {
    if (party < 1 || party > dims.size()) {
        fail(ErrorCode::BadPartyIndex,
             "party " + std::to_string(party) + " not in [1, " + std::to_string(dims.size()) + "]");
    }
    return party - 1;
}

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(Dims dims) : dims_(std::move(dims)), entries_(total_dim(dims_)) {
}

ComplexVector::ComplexVector(Dims dims, std::vector<Complex> entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
    if (entries_.size() != total_dim(dims_)) {
        fail(ErrorCode::DimensionMismatch, "vector length does not match dims");
    }
}

ComplexVector ComplexVector::basis(Dims dims, std::size_t index) {
    ComplexVector v(std::move(dims));
    if (index >= v.size()) {
        fail(ErrorCode::DimensionMismatch, "basis index out of range");
    }
    v.entries_[index] = 1.0;
    return v;
}

double ComplexVector::squared_norm() const {
    double acc = 0;
    for (const auto &z : entries_) {
        acc += std::norm(z);
    }
    return acc;
}

double ComplexVector::norm() const {
    return std::sqrt(squared_norm());
}

ComplexVector ComplexVector::normalized() const {
    double n = norm();
    if (n == 0) {
        fail(ErrorCode::InvalidState, "cannot normalize the zero vector");
    }
    return Complex(1.0 / n) * *this;
}

ComplexVector ComplexVector::with_dims(Dims dims) const {
    return ComplexVector(std::move(dims), entries_);
}

Complex inner(const ComplexVector &a, const ComplexVector &b) {
    require_same_size(a.size(), b.size(), "inner");
    Complex acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out.push_back(a[i] * b[j]);
        }
    }
    return ComplexVector(std::move(dims), std::move(out));
}

ComplexVector operator*(Complex scale, const ComplexVector &v) {
    std::vector<Complex> out(v.entries().begin(), v.entries().end());
    for (auto &z : out) {
        z *= scale;
    }
    return ComplexVector(v.dims(), std::move(out));
}

ComplexVector operator+(const ComplexVector &a, const ComplexVector &b) {
    require_same_size(a.size(), b.size(), "vector +");
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return ComplexVector(a.dims(), std::move(out));
}

ComplexVector operator-(const ComplexVector &a, const ComplexVector &b) {
    return a + Complex(-1.0) * b;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(Dims dims)
    : dims_(std::move(dims)), size_(total_dim(dims_)), entries_(size_ * size_) {
}

ComplexMatrix::ComplexMatrix(Dims dims, std::vector<Complex> entries)
    : dims_(std::move(dims)), size_(total_dim(dims_)), entries_(std::move(entries)) {
    if (entries_.size() != size_ * size_) {
        fail(ErrorCode::DimensionMismatch, "matrix entry count does not match dims");
    }
}

ComplexMatrix ComplexMatrix::identity(Dims dims) {
    ComplexMatrix m(std::move(dims));
    for (std::size_t i = 0; i < m.size_; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(Dims dims, std::span<const double> values) {
    ComplexMatrix m(std::move(dims));
    require_same_size(values.size(), m.size_, "diagonal");
    for (std::size_t i = 0; i < m.size_; ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &a, const ComplexVector &b) {
    require_same_size(a.size(), b.size(), "outer");
    ComplexMatrix m(a.dims());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(const ComplexVector &v) {
    return outer(v, v);
}

Complex ComplexMatrix::trace() const {
    Complex acc = 0;
    for (std::size_t i = 0; i < size_; ++i) {
        acc += (*this)(i, i);
    }
    return acc;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dims_);
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0;
    for (const auto &z : entries_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0;
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = i; j < size_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return hermiticity_defect() <= tol;
}

ComplexMatrix ComplexMatrix::with_dims(Dims dims) const {
    return ComplexMatrix(std::move(dims), entries_);
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_size(a.size(), b.size(), "matrix +");
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    auto rhs = b.entries();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += rhs[i];
    }
    return ComplexMatrix(a.dims(), std::move(out));
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_size(a.size(), b.size(), "matrix -");
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    auto rhs = b.entries();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= rhs[i];
    }
    return ComplexMatrix(a.dims(), std::move(out));
}

ComplexMatrix operator*(Complex scale, const ComplexMatrix &m) {
    std::vector<Complex> out(m.entries().begin(), m.entries().end());
    for (auto &z : out) {
        z *= scale;
    }
    return ComplexMatrix(m.dims(), std::move(out));
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_size(a.size(), b.size(), "matrix *");
    const std::size_t n = a.size();
    ComplexMatrix out(a.dims());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex aik = a(i, k);
            if (aik == Complex(0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v) {
    require_same_size(m.size(), v.size(), "matrix * vector");
    std::vector<Complex> out(v.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Complex acc = 0;
        for (std::size_t j = 0; j < m.size(); ++j) {
            acc += m(i, j) * v[j];
        }
        out[i] = acc;
    }
    return ComplexVector(v.dims(), std::move(out));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dims(a.dims(), b.dims(), "max_abs_diff");
    double worst = 0;
    auto x = a.entries();
    auto y = b.entries();
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(x[i] - y[i]));
    }
    return worst;
}

double expectation(const ComplexMatrix &m, const ComplexVector &v) {
    return inner(v, m * v).real();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    ComplexMatrix out(std::move(dims));
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            Complex aij = a(i, j);
            if (aij == Complex(0)) {
                continue;
            }
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::span<const std::size_t> keep) {
    const Dims &dims = m.dims();
    if (keep.empty()) {
        fail(ErrorCode::BadPartyIndex, "partial_trace needs at least one kept party");
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t party : keep) {
        std::size_t k = party_offset(dims, party);
        if (kept[k]) {
            fail(ErrorCode::BadPartyIndex, "party listed twice in partial_trace");
        }
        kept[k] = true;
    }

    Dims kept_dims;
    Dims traced_dims;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        (kept[k] ? kept_dims : traced_dims).push_back(dims[k]);
    }
    if (traced_dims.empty()) {
        return m;
    }

    // Split every flat index into (kept index, traced index).
    const auto strides = strides_of(dims);
    const std::size_t n = m.size();
    std::vector<std::size_t> kidx(n);
    std::vector<std::size_t> tidx(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t ki = 0;
        std::size_t ti = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::size_t digit = (i / strides[k]) % dims[k];
            if (kept[k]) {
                ki = ki * dims[k] + digit;
            } else {
                ti = ti * dims[k] + digit;
            }
        }
        kidx[i] = ki;
        tidx[i] = ti;
    }

    ComplexMatrix out(kept_dims);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (tidx[i] == tidx[j]) {
                out(kidx[i], kidx[j]) += m(i, j);
            }
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, std::size_t party) {
    const Dims &dims = m.dims();
    const std::size_t k = party_offset(dims, party);
    const std::size_t stride = strides_of(dims)[k];
    const std::size_t local = dims[k];
    const std::size_t n = m.size();

    ComplexMatrix out(dims);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t di = (i / stride) % local;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t dj = (j / stride) % local;
            std::size_t ti = i - di * stride + dj * stride;
            std::size_t tj = j - dj * stride + di * stride;
            out(ti, tj) = m(i, j);
        }
    }
    return out;
}

ComplexMatrix contract_party(const ComplexMatrix &m, std::size_t party, const ComplexVector &v) {
    const Dims &dims = m.dims();
    const std::size_t k = party_offset(dims, party);
    const std::size_t local = dims[k];
    if (v.size() != local) {
        fail(ErrorCode::DimensionMismatch, "contract_party: factor length does not match party dimension");
    }
    Dims rest = dims;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    if (rest.empty()) {
        rest.push_back(1);
    }

    const std::size_t stride = strides_of(dims)[k];
    const std::size_t n = m.size();
    std::vector<std::size_t> digit(n);
    std::vector<std::size_t> reduced(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t high = i / (stride * local);
        std::size_t low = i % stride;
        digit[i] = (i / stride) % local;
        reduced[i] = high * stride + low;
    }

    ComplexMatrix out(std::move(rest));
    for (std::size_t i = 0; i < n; ++i) {
        Complex left = std::conj(v[digit[i]]);
        if (left == Complex(0)) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            out(reduced[i], reduced[j]) += left * m(i, j) * v[digit[j]];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Eigendecomposition

std::size_t SpectralDecomposition::rank(double tol) const {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(), [tol](double x) { return x > tol; }));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
    ComplexMatrix out(dims);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        out = out + Complex(eigenvalues[i]) * ComplexMatrix::projector(eigenvectors[i]);
    }
    return out;
}

namespace {

constexpr double kPhaseThreshold = 1e-12;
constexpr double kLexTolerance = 1e-9;

void fix_phase(std::vector<Complex> &v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        double mag = std::abs(v[k]);
        if (mag > kPhaseThreshold) {
            Complex rot = std::conj(v[k]) / mag;
            for (auto &w : v) {
                w *= rot;
            }
            v[k] = Complex(mag, 0.0);
            return;
        }
    }
}

bool lex_less(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k].real() - b[k].real()) > kLexTolerance) {
            return a[k].real() < b[k].real();
        }
        if (std::abs(a[k].imag() - b[k].imag()) > kLexTolerance) {
            return a[k].imag() < b[k].imag();
        }
    }
    return false;
}

}  // namespace

SpectralDecomposition hermitian_eig(const ComplexMatrix &m) {
    double defect = m.hermiticity_defect();
    if (defect > kHermitianTolerance) {
        fail(ErrorCode::NotHermitian, "entrywise defect " + std::to_string(defect));
    }

    const std::size_t n = m.size();
    // Work on the symmetrized copy so the rotations see an exactly Hermitian matrix.
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a[i * n + j] = z;
            a[j * n + i] = std::conj(z);
        }
    }
    std::vector<Complex> vecs(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        vecs[i * n + i] = 1.0;
    }

    const double scale = m.frobenius_norm();
    bool converged = false;
    for (int sweep = 0; sweep <= kJacobiSweepBudget; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a[p * n + q]);
            }
        }
        if (std::sqrt(2 * off) <= 1e-15 * scale || off == 0) {
            converged = true;
            break;
        }
        if (sweep == kJacobiSweepBudget) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double g = std::abs(apq);
                if (g == 0) {
                    continue;
                }
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();
                // Negligible against both diagonal entries: drop it.
                if (sweep > 3 && std::abs(app) + 100 * g == std::abs(app) &&
                    std::abs(aqq) + 100 * g == std::abs(aqq)) {
                    a[p * n + q] = 0;
                    a[q * n + p] = 0;
                    continue;
                }
                const Complex phase = apq / g;
                const Complex cphase = std::conj(phase);
                const double theta = (aqq - app) / (2 * g);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1 / (2 * theta);
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                }
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;

                // A <- A V, then A <- V^dagger A, with
                // V = [[c, s], [-s conj(phase), c conj(phase)]] on (p, q).
                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a[k * n + p];
                    Complex akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * cphase * akq;
                    a[k * n + q] = s * akp + c * cphase * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a[p * n + k];
                    Complex aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * phase * aqk;
                    a[q * n + k] = s * apk + c * phase * aqk;
                }
                a[p * n + p] = app - t * g;
                a[q * n + q] = aqq + t * g;
                a[p * n + q] = 0;
                a[q * n + p] = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    Complex vkp = vecs[k * n + p];
                    Complex vkq = vecs[k * n + q];
                    vecs[k * n + p] = c * vkp - s * cphase * vkq;
                    vecs[k * n + q] = s * vkp + c * cphase * vkq;
                }
            }
        }
    }
    if (!converged) {
        fail(ErrorCode::NoConvergence,
             "Jacobi eigensolver exceeded " + std::to_string(kJacobiSweepBudget) + " sweeps");
    }

    struct Pair {
        double value;
        std::vector<Complex> vec;
    };
    std::vector<Pair> pairs(n);
    for (std::size_t j = 0; j < n; ++j) {
        pairs[j].value = a[j * n + j].real();
        pairs[j].vec.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pairs[j].vec[i] = vecs[i * n + j];
        }
        fix_phase(pairs[j].vec);
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair &x, const Pair &y) { return x.value < y.value; });

    // Clusters of numerically equal eigenvalues are ordered by eigenvector.
    const double tie = 1e-10 * std::max(1.0, scale);
    for (std::size_t begin = 0; begin < n;) {
        std::size_t end = begin + 1;
        while (end < n && pairs[end].value - pairs[end - 1].value <= tie) {
            ++end;
        }
        if (end - begin > 1) {
            std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                             pairs.begin() + static_cast<std::ptrdiff_t>(end),
                             [](const Pair &x, const Pair &y) { return lex_less(x.vec, y.vec); });
        }
        begin = end;
    }

    SpectralDecomposition sd;
    sd.dims = m.dims();
    sd.eigenvalues.reserve(n);
    sd.eigenvectors.reserve(n);
    for (auto &pair : pairs) {
        sd.eigenvalues.push_back(pair.value);
        sd.eigenvectors.emplace_back(m.dims(), std::move(pair.vec));
    }
    return sd;
}

}  // namespace wforge

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

#include "wforge/product_opt.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "wforge/errors.hpp"

namespace wforge {

ProductState::ProductState(std::vector<ComplexVector> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        fail(ErrorCode::DimensionMismatch, "product state needs at least one factor");
    }
    for (const auto &f : factors_) {
        if (std::abs(f.norm() - 1.0) > 1e-12) {
            fail(ErrorCode::InvalidState, "product state factor is not unit norm");
        }
    }
}

Dims ProductState::dims() const {
    Dims dims;
    for (const auto &f : factors_) {
        dims.push_back(f.size());
    }
    return dims;
}

ComplexVector ProductState::tensor() const {
    ComplexVector out = factors_.front().with_dims({factors_.front().size()});
    for (std::size_t k = 1; k < factors_.size(); ++k) {
        out = kron(out, factors_[k].with_dims({factors_[k].size()}));
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Explicit bit-level sampling so streams agree across standard libraries.
class Stream {
   public:
    Stream(std::uint64_t seed, std::uint64_t index) : state_(seed) {
        std::uint64_t mix = index;
        state_ ^= splitmix64(mix);
    }
    double uniform() {
        return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
    }
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
    }

   private:
    std::uint64_t state_;
};

// Operator on party k after contracting every other factor of `state`.
ComplexMatrix local_operator(const ComplexMatrix &m, const std::vector<ComplexVector> &factors, std::size_t k) {
    ComplexMatrix reduced = m;
    for (std::size_t j = factors.size(); j-- > 0;) {
        if (j != k) {
            reduced = contract_party(reduced, j + 1, factors[j]);
        }
    }
    return reduced;
}

bool improves(Extremum mode, double candidate, double incumbent) {
    return mode == Extremum::max ? candidate > incumbent : candidate < incumbent;
}

}  // namespace

ProductState random_product_state(const Dims &dims, std::uint64_t seed, std::uint64_t index) {
    Stream stream(seed, index);
    std::vector<ComplexVector> factors;
    for (std::size_t d : dims) {
        std::vector<Complex> amps(d);
        for (auto &z : amps) {
            double re = stream.gaussian();
            double im = stream.gaussian();
            z = Complex(re, im);
        }
        factors.push_back(ComplexVector({d}, std::move(amps)).normalized());
    }
    return ProductState(std::move(factors));
}

LocalRun seesaw_local(const ComplexMatrix &m, Extremum mode, ProductState start, int max_rounds,
                      double tolerance, bool record_trace) {
    if (start.dims() != m.dims()) {
        fail(ErrorCode::DimensionMismatch, "starting product state does not match operator dims");
    }
    std::vector<ComplexVector> factors = start.factors();
    double value = expectation(m, start.tensor());
    LocalRun run{value, std::move(start), 0, false, {}};
    if (record_trace) {
        run.trace.push_back(value);
    }

    const std::size_t n = factors.size();
    for (int round = 1; round <= max_rounds; ++round) {
        const double before = value;
        for (std::size_t k = 0; k < n; ++k) {
            ComplexMatrix local = local_operator(m, factors, k);
            SpectralDecomposition sd = hermitian_eig(local.with_dims({local.size()}));
            const std::size_t pick = mode == Extremum::max ? sd.size() - 1 : 0;
            factors[k] = sd.eigenvectors[pick].normalized();
            value = sd.eigenvalues[pick];
            if (record_trace) {
                run.trace.push_back(value);
            }
        }
        run.rounds = round;
        const double gain = mode == Extremum::max ? value - before : before - value;
        if (gain < tolerance) {
            run.converged = true;
            break;
        }
    }
    run.state = ProductState(std::move(factors));
    run.value = expectation(m, run.state.tensor());
    return run;
}

OptResult optimize_product(const ComplexMatrix &m, Extremum mode, const SeesawOptions &options) {
    if (!m.is_hermitian()) {
        fail(ErrorCode::NotHermitian, "product optimization needs a Hermitian operator");
    }
    if (options.restarts < 1) {
        fail(ErrorCode::ParamOutOfRange, "at least one restart is required");
    }
    std::optional<LocalRun> best;
    bool all_converged = true;
    for (int r = 0; r < options.restarts; ++r) {
        LocalRun run = seesaw_local(m, mode, random_product_state(m.dims(), options.seed, static_cast<std::uint64_t>(r)),
                                    options.max_rounds, options.tolerance);
        all_converged = all_converged && run.converged;
        if (!best || improves(mode, run.value, best->value)) {
            best = std::move(run);
        }
    }
    return OptResult{best->value, std::move(best->state), options.restarts, all_converged};
}

OptResult max_product_expectation(const ComplexMatrix &m, int restarts, std::uint64_t seed) {
    SeesawOptions options;
    options.restarts = restarts;
    options.seed = seed;
    return optimize_product(m, Extremum::max, options);
}

OptResult min_product_expectation(const ComplexMatrix &m, int restarts, std::uint64_t seed) {
    SeesawOptions options;
    options.restarts = restarts;
    options.seed = seed;
    return optimize_product(m, Extremum::min, options);
}

}  // namespace wforge

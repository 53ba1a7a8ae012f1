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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "wforge/errors.hpp"

namespace wforge {

namespace {

constexpr double kMaxGridPoints = 2e8;

std::vector<ComplexVector> grid_points(std::size_t d, int resolution) {
    const std::size_t steps = static_cast<std::size_t>(resolution);
    const std::size_t angles = d - 1;
    std::vector<ComplexVector> out;
    // Counters: first the magnitude angles (steps + 1 values each), then the phases (steps values each).
    std::vector<std::size_t> counter(2 * angles, 0);
    while (true) {
        std::vector<Complex> amps(d);
        double carry = 1.0;
        for (std::size_t j = 0; j < angles; ++j) {
            const double alpha = (std::numbers::pi / 2) * static_cast<double>(counter[j]) / static_cast<double>(steps);
            amps[j] = carry * std::cos(alpha);
            carry *= std::sin(alpha);
        }
        amps[d - 1] = carry;
        for (std::size_t j = 0; j < angles; ++j) {
            const double phi = 2 * std::numbers::pi * static_cast<double>(counter[angles + j]) / static_cast<double>(steps);
            amps[j + 1] *= std::polar(1.0, phi);
        }
        out.emplace_back(Dims{d}, std::move(amps));

        // Last counter varies fastest.
        std::size_t pos = counter.size();
        while (pos-- > 0) {
            const std::size_t limit = pos < angles ? steps + 1 : steps;
            if (++counter[pos] < limit) {
                break;
            }
            counter[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) {
            break;
        }
    }
    return out;
}

double extreme_eigenvalue(const std::vector<Complex> &block, std::size_t n, Extremum mode) {
    if (n == 1) {
        return block[0].real();
    }
    if (n == 2) {
        const double a = block[0].real();
        const double d = block[3].real();
        const double half = 0.5 * (a - d);
        const double r = std::sqrt(half * half + std::norm(block[1]));
        const double mean = 0.5 * (a + d);
        return mode == Extremum::max ? mean + r : mean - r;
    }
    SpectralDecomposition sd = hermitian_eig(ComplexMatrix({n}, block));
    return mode == Extremum::max ? sd.max_eigenvalue() : sd.min_eigenvalue();
}

bool better(Extremum mode, double candidate, double incumbent) {
    return mode == Extremum::max ? candidate > incumbent : candidate < incumbent;
}

struct Search {
    Extremum mode;
    std::vector<std::size_t> gridded;  // 0-based party indices, ascending
    std::size_t exact;                 // 0-based party index
    std::vector<std::vector<ComplexVector>> points;

    bool found = false;
    double best = 0;
    std::vector<std::size_t> best_indices;

    // Sweeps the last gridded party against the exact party. `op` acts on
    // exactly those two parties, in original order.
    void final_level(const ComplexMatrix &op, std::vector<std::size_t> &indices) {
        const std::size_t g = gridded.back();
        const std::size_t dg = op.dims()[g < exact ? 0 : 1];
        const std::size_t de = op.dims()[g < exact ? 1 : 0];
        auto idx = [&](std::size_t x, std::size_t a) { return g < exact ? x * de + a : a * dg + x; };
        std::vector<Complex> block(de * de);
        std::vector<Complex> weights(dg * dg);
        const auto &pts = points[gridded.size() - 1];
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const ComplexVector &v = pts[p];
            for (std::size_t x = 0; x < dg; ++x) {
                for (std::size_t y = 0; y < dg; ++y) {
                    weights[x * dg + y] = std::conj(v[x]) * v[y];
                }
            }
            for (std::size_t a = 0; a < de; ++a) {
                for (std::size_t b = a; b < de; ++b) {
                    Complex acc = 0;
                    for (std::size_t x = 0; x < dg; ++x) {
                        for (std::size_t y = 0; y < dg; ++y) {
                            acc += weights[x * dg + y] * op(idx(x, a), idx(y, b));
                        }
                    }
                    block[a * de + b] = acc;
                    block[b * de + a] = std::conj(acc);
                }
            }
            const double value = extreme_eigenvalue(block, de, mode);
            if (!found || better(mode, value, best)) {
                found = true;
                best = value;
                indices.back() = p;
                best_indices = indices;
            }
        }
    }

    // Contracts gridded parties one at a time, first to last.
    void level(const ComplexMatrix &op, std::size_t depth, std::vector<std::size_t> &indices) {
        if (depth + 1 == gridded.size()) {
            final_level(op, indices);
            return;
        }
        // Earlier gridded parties are already contracted away, shifting this one left by `depth`.
        const std::size_t position = gridded[depth] - depth;
        const auto &pts = points[depth];
        for (std::size_t p = 0; p < pts.size(); ++p) {
            indices[depth] = p;
            level(contract_party(op, position + 1, pts[p]), depth + 1, indices);
        }
    }
};

}  // namespace

bool oracle_supports(const Dims &dims) {
    if (dims.size() == 1) {
        return true;
    }
    const bool all_qubits = std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; });
    if (all_qubits && dims.size() <= 3) {
        return true;
    }
    return dims.size() == 2 && std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d >= 1 && d <= 4; });
}

GridResult grid_search(const ComplexMatrix &m, Extremum mode, int resolution, bool polish) {
    if (!oracle_supports(m.dims())) {
        fail(ErrorCode::UnsupportedDims, "grid oracle supports one party, up to three qubits, or two parties of "
                                         "dimension <= 4");
    }
    if (resolution < kMinGridResolution) {
        fail(ErrorCode::ParamOutOfRange, "grid resolution must be at least " + std::to_string(kMinGridResolution));
    }
    if (!m.is_hermitian()) {
        fail(ErrorCode::NotHermitian, "grid oracle needs a Hermitian operator");
    }
    const Dims &dims = m.dims();

    // The largest party (last on ties) is solved exactly.
    std::size_t exact = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] >= dims[exact]) {
            exact = k;
        }
    }
    Search search;
    search.mode = mode;
    search.exact = exact;
    double total_points = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k != exact) {
            search.gridded.push_back(k);
            const double per_party = std::pow(resolution + 1.0, static_cast<double>(dims[k] - 1)) *
                                     std::pow(static_cast<double>(resolution), static_cast<double>(dims[k] - 1));
            total_points *= per_party;
        }
    }
    if (total_points > kMaxGridPoints) {
        fail(ErrorCode::UnsupportedDims, "grid would need " + std::to_string(total_points) + " points");
    }

    std::vector<ComplexVector> factors(dims.size(), ComplexVector({1}));
    if (!search.gridded.empty()) {
        for (std::size_t k : search.gridded) {
            search.points.push_back(grid_points(dims[k], resolution));
        }
        std::vector<std::size_t> indices(search.gridded.size(), 0);
        search.level(m, 0, indices);
        for (std::size_t j = 0; j < search.gridded.size(); ++j) {
            factors[search.gridded[j]] = search.points[j][search.best_indices[j]];
        }
    }

    // Exact party: extreme eigenvector of m contracted with the gridded factors.
    ComplexMatrix reduced = m;
    for (std::size_t j = search.gridded.size(); j-- > 0;) {
        reduced = contract_party(reduced, search.gridded[j] + 1, factors[search.gridded[j]]);
    }
    SpectralDecomposition sd = hermitian_eig(reduced.with_dims({reduced.size()}));
    factors[exact] = sd.eigenvectors[mode == Extremum::max ? sd.size() - 1 : 0].normalized();

    ProductState grid_state(std::move(factors));
    const double grid_value = expectation(m, grid_state.tensor());
    GridResult result{grid_value, grid_state, grid_value, grid_state, static_cast<std::size_t>(total_points)};
    if (polish) {
        LocalRun run = seesaw_local(m, mode, grid_state, 500, 1e-12);
        if (better(mode, run.value, grid_value)) {
            result.value = run.value;
            result.state = std::move(run.state);
        }
    }
    return result;
}

double grid_product_extremum(const ComplexMatrix &m, Extremum mode, int resolution) {
    return grid_search(m, mode, resolution, true).value;
}

WitnessReport exhaustive_witness_check(const Witness &w, int resolution) {
    const ComplexMatrix wm = w.matrix();
    GridResult lowest = grid_search(wm, Extremum::min, resolution, true);
    return make_report(lowest.value, lowest.state, hermitian_eig(wm), false);
}

}  // namespace wforge

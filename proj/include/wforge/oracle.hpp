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

#include "wforge/linalg.hpp"
#include "wforge/product_opt.hpp"
#include "wforge/witness.hpp"

namespace wforge {

/// Brute-force product-state search used to cross-check the see-saw.
///
/// Every party but one is swept over a fixed angle grid: a factor of dimension
/// d is written as (r_0, r_1 e^{i phi_1}, ..., r_{d-1} e^{i phi_{d-1}}) with
/// hyperspherical magnitudes (angles k (pi/2)/resolution, k = 0..resolution)
/// and phases 2 pi j/resolution, j = 0..resolution-1. For qubits this is the
/// Bloch grid theta = 2 alpha in [0, pi], phi in [0, 2 pi). The remaining party
/// (the largest, last on ties) is optimized exactly as the extreme eigenvector
/// of the contracted operator. Doubling the resolution keeps every old grid
/// point.
///
/// Supported: one party; up to three qubits; two parties of dimension <= 4.
struct GridResult {
    /// Best value over the grid.
    double grid_value;
    ProductState grid_state;
    /// After one see-saw polish from grid_state (equal to the grid values when
    /// polishing is disabled).
    double value;
    ProductState state;
    std::size_t grid_points;
};

inline constexpr int kMinGridResolution = 32;

bool oracle_supports(const Dims &dims);

/// Throws UnsupportedDims, ParamOutOfRange (resolution < 32), NotHermitian.
GridResult grid_search(const ComplexMatrix &m, Extremum mode, int resolution, bool polish = true);

/// Polished grid extremum of <mu|m|mu>.
double grid_product_extremum(const ComplexMatrix &m, Extremum mode, int resolution);

/// WitnessReport with the product minimum taken from the grid.
WitnessReport exhaustive_witness_check(const Witness &w, int resolution);

}  // namespace wforge

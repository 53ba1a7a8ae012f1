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

#include <span>
#include <string_view>
#include <vector>

#include "wforge/linalg.hpp"
#include "wforge/product_opt.hpp"
#include "wforge/qstate.hpp"

namespace wforge {

/// c-interval checks are closed and widened by this much on the optimized side.
inline constexpr double kIntervalTolerance = 1e-8;
/// The spectral side of the c-interval is open: c must clear lambda_0 / lambda_M by this.
inline constexpr double kSpectralGap = 1e-10;
/// WitnessReport thresholds.
inline constexpr double kPositivityTolerance = 1e-8;
inline constexpr double kNegativityTolerance = 1e-10;

enum class WitnessForm {
    c_minus_sigma,  // W = c I - sigma
    sigma_minus_c,  // W = sigma - c I
};

std::string_view form_name(WitnessForm form);
WitnessForm parse_form(std::string_view name);

enum class CheckMode {
    strict,    // spectral bound and optimized product bound
    spectral,  // only the open spectral side
    none,
};

/// Hermitian operator stored as (form, c, sigma). sigma may be unnormalized,
/// e.g. the projector onto a partial purification.
class Witness {
   public:
    Witness(WitnessForm form, double c, DensityMatrix sigma);

    WitnessForm form() const noexcept {
        return form_;
    }
    double c() const noexcept {
        return c_;
    }
    const DensityMatrix &sigma() const noexcept {
        return sigma_;
    }
    const Dims &dims() const noexcept {
        return sigma_.dims();
    }
    ComplexMatrix matrix() const;

   private:
    WitnessForm form_;
    double c_;
    DensityMatrix sigma_;
};

/// Admissible c range for a given sigma and form:
///   c_minus_sigma: [c_min, lambda_M)   sigma_minus_c: (lambda_0, c_max]
/// where c_min / c_max come from the see-saw.
struct CInterval {
    double lower;
    double upper;
    bool lower_open;
    bool upper_open;
    /// Spectral bracket of sigma.
    double lambda_min;
    double lambda_max;
    OptResult product_bound;
};

CInterval admissible_interval(WitnessForm form, const DensityMatrix &sigma, const SeesawOptions &options = {});

/// Builds a witness, checking c against the admissible interval as requested.
/// Throws COutOfInterval.
Witness make_witness(WitnessForm form, DensityMatrix sigma, double c, CheckMode check,
                     const SeesawOptions &options = {});

/// tr(W rho). Throws DimensionMismatch.
double evaluate(const Witness &w, const DensityMatrix &rho);

struct WitnessReport {
    double min_product_expectation;
    /// -lambda_0(W)
    double witnessing_margin;
    bool is_witness;
    /// The minimum over product states came from a local search and is only an
    /// upper bound on the true minimum.
    bool min_is_upper_bound;
    ProductState certificate_product;
    /// Eigenvector of lambda_0(W): the state W detects most strongly.
    ComplexVector certificate_eigenvector;
};

/// Assembles a report from the two measured quantities, applying the
/// positivity/negativity thresholds.
WitnessReport make_report(double min_product, const ProductState &argmin, const SpectralDecomposition &w_spectrum,
                          bool min_is_upper_bound);

WitnessReport verify_witness(const Witness &w, const SeesawOptions &options = {});

struct CesResult {
    /// max < 1 - 1e-6. Heuristic when true, conclusive when false.
    bool is_ces;
    OptResult max_overlap;
};

/// Whether span(basis) avoids every product state, judged by the largest
/// product-state overlap with its projector. Throws NotOrthonormal.
CesResult is_ces(std::span<const ComplexVector> basis, const SeesawOptions &options = {});

}  // namespace wforge

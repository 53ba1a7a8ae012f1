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

#include "wforge/witness.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "wforge/errors.hpp"

namespace wforge {

std::string_view form_name(WitnessForm form) {
    return form == WitnessForm::c_minus_sigma ? "c_minus_sigma" : "sigma_minus_c";
}

WitnessForm parse_form(std::string_view name) {
    if (name == "c_minus_sigma") {
        return WitnessForm::c_minus_sigma;
    }
    if (name == "sigma_minus_c") {
        return WitnessForm::sigma_minus_c;
    }
    fail(ErrorCode::ParseError, "unknown witness form '" + std::string(name) + "'");
}

Witness::Witness(WitnessForm form, double c, DensityMatrix sigma) : form_(form), c_(c), sigma_(std::move(sigma)) {
    if (!std::isfinite(c_)) {
        fail(ErrorCode::ParamOutOfRange, "witness parameter c must be finite");
    }
}

ComplexMatrix Witness::matrix() const {
    ComplexMatrix shift = Complex(c_) * ComplexMatrix::identity(dims());
    return form_ == WitnessForm::c_minus_sigma ? shift - sigma_.matrix() : sigma_.matrix() - shift;
}

CInterval admissible_interval(WitnessForm form, const DensityMatrix &sigma, const SeesawOptions &options) {
    SpectralDecomposition sd = spectral(sigma);
    if (form == WitnessForm::c_minus_sigma) {
        OptResult cmin = optimize_product(sigma.matrix(), Extremum::max, options);
        return CInterval{cmin.value,          sd.max_eigenvalue(), false, true, sd.min_eigenvalue(),
                         sd.max_eigenvalue(), std::move(cmin)};
    }
    OptResult cmax = optimize_product(sigma.matrix(), Extremum::min, options);
    return CInterval{sd.min_eigenvalue(), cmax.value,          true, false, sd.min_eigenvalue(),
                     sd.max_eigenvalue(), std::move(cmax)};
}

namespace {

[[noreturn]] void out_of_interval(double c, const std::string &rule) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "c = " << c << " violates " << rule;
    fail(ErrorCode::COutOfInterval, msg.str());
}

void check_spectral_side(WitnessForm form, double c, double lambda_min, double lambda_max) {
    if (form == WitnessForm::c_minus_sigma) {
        if (!(c <= lambda_max - kSpectralGap)) {
            std::ostringstream rule;
            rule.precision(17);
            rule << "c < lambda_max = " << lambda_max;
            out_of_interval(c, rule.str());
        }
    } else if (!(c >= lambda_min + kSpectralGap)) {
        std::ostringstream rule;
        rule.precision(17);
        rule << "c > lambda_min = " << lambda_min;
        out_of_interval(c, rule.str());
    }
}

}  // namespace

Witness make_witness(WitnessForm form, DensityMatrix sigma, double c, CheckMode check, const SeesawOptions &options) {
    if (check == CheckMode::spectral) {
        SpectralDecomposition sd = spectral(sigma);
        check_spectral_side(form, c, sd.min_eigenvalue(), sd.max_eigenvalue());
    } else if (check == CheckMode::strict) {
        CInterval interval = admissible_interval(form, sigma, options);
        check_spectral_side(form, c, interval.lambda_min, interval.lambda_max);
        if (form == WitnessForm::c_minus_sigma && c < interval.lower - kIntervalTolerance) {
            std::ostringstream rule;
            rule.precision(17);
            rule << "c >= c_min = " << interval.lower;
            out_of_interval(c, rule.str());
        }
        if (form == WitnessForm::sigma_minus_c && c > interval.upper + kIntervalTolerance) {
            std::ostringstream rule;
            rule.precision(17);
            rule << "c <= c_max = " << interval.upper;
            out_of_interval(c, rule.str());
        }
    }
    return Witness(form, c, std::move(sigma));
}

double evaluate(const Witness &w, const DensityMatrix &rho) {
    if (w.dims() != rho.dims()) {
        fail(ErrorCode::DimensionMismatch, "witness and state live on different spaces");
    }
    const ComplexMatrix wm = w.matrix();
    const ComplexMatrix &r = rho.matrix();
    Complex acc = 0;
    for (std::size_t i = 0; i < wm.size(); ++i) {
        for (std::size_t j = 0; j < wm.size(); ++j) {
            acc += wm(i, j) * r(j, i);
        }
    }
    return acc.real();
}

WitnessReport make_report(double min_product, const ProductState &argmin, const SpectralDecomposition &w_spectrum,
                          bool min_is_upper_bound) {
    const double margin = -w_spectrum.min_eigenvalue();
    const bool ok = min_product >= -kPositivityTolerance && margin > kNegativityTolerance;
    return WitnessReport{min_product, margin, ok, min_is_upper_bound, argmin, w_spectrum.eigenvectors.front()};
}

WitnessReport verify_witness(const Witness &w, const SeesawOptions &options) {
    const ComplexMatrix wm = w.matrix();
    OptResult lowest = optimize_product(wm, Extremum::min, options);
    return make_report(lowest.value, lowest.state, hermitian_eig(wm), true);
}

CesResult is_ces(std::span<const ComplexVector> basis, const SeesawOptions &options) {
    if (basis.empty()) {
        fail(ErrorCode::NotOrthonormal, "empty basis");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (basis[i].dims() != basis[0].dims()) {
                fail(ErrorCode::DimensionMismatch, "basis vectors live on different spaces");
            }
            const Complex g = inner(basis[i], basis[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > kStateTolerance) {
                fail(ErrorCode::NotOrthonormal, "basis vectors are not orthonormal");
            }
        }
    }
    ComplexMatrix projector(basis[0].dims());
    for (const auto &v : basis) {
        projector = projector + ComplexMatrix::projector(v);
    }
    OptResult best = optimize_product(projector, Extremum::max, options);
    const bool ces = best.value < 1 - 1e-6;
    return CesResult{ces, std::move(best)};
}

}  // namespace wforge

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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wforge/qstate.hpp"
#include "wforge/witness.hpp"

namespace wforge {

// Extensions of a bipartite (or any) witness to more parties. All of them keep
// c as it is; only sigma grows. The new parties are appended after the
// existing ones. Each result is rechecked against the open spectral side of its
// c-interval and the operations throw COutOfInterval if that fails.

/// c I - |psi><psi| with |psi> = purify(sigma). c_minus_sigma only.
Witness purify_extend(const Witness &w, std::optional<std::size_t> ancilla_dim = std::nullopt);

/// c I - |psi><psi| (x) |t_1><t_1| (x) ... for normalized pure tails.
/// Throws UnnormalizedTail.
Witness purify_extend_n(const Witness &w, std::span<const PureState> tails);

/// c* I - |phi><phi| for a partial purification |phi> that includes a largest
/// eigenvalue of sigma. c* is `c_prime` when given (c <= c' < |phi|^2), else c.
/// Throws FormNotSupported, MaxEigenvalueNotSelected, CPrimeOutOfInterval.
Witness partial_purify_extend(const Witness &w, const PurificationSelection &sel,
                              std::optional<double> c_prime = std::nullopt);

/// Tensors normalized pure tails onto sigma. Composed after partial_purify_extend
/// this gives the n-party partial-purification witnesses.
Witness append_pure_tails(const Witness &w, std::span<const PureState> tails);

/// Number of partial purifications that include the top eigenpair, for a state
/// of rank R extended by an ancilla of dimension d3:
///   sum_{i=1}^{min(d3,R)} C(R-1, i-1) * d3! / (d3-i)!
std::uint64_t count_partial_purifications(std::size_t rank, std::size_t d3);

inline constexpr std::size_t kEnumerationCap = 64;

/// Every selection over the support of sd that contains the highest eigen
/// index, with pairs in ascending eigen order and the list sorted
/// lexicographically. Throws CountTooLarge when rank * d3 > 64.
std::vector<PurificationSelection> enumerate_partial_purifications(const SpectralDecomposition &sd, std::size_t d3);

/// c I - sigma (x) sigma_3/lambda_max(sigma_3) (x) ... for normalized tails.
/// c_minus_sigma only. Throws UnnormalizedTail, ZeroMaxEigenvalue.
Witness mixed_tensor_extend(const Witness &w, std::span<const DensityMatrix> tails);

/// sigma -> sigma (x) I_{d_3} (x) ... (x) I_{d_n}; valid for both forms.
Witness identity_extend(const Witness &w, std::span<const std::size_t> tail_dims);

/// tr(W (rho12 (x) rho_3 (x) ... (x) rho_n)).
double detect_product_extension(const Witness &w_ext, const DensityMatrix &rho12,
                                std::span<const DensityMatrix> tails);

}  // namespace wforge

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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wforge/linalg.hpp"
#include "wforge/qstate.hpp"
#include "wforge/witness.hpp"

namespace wforge {

enum class MatrixKind { density, pure, hermitian, witness };

std::string_view kind_name(MatrixKind kind);

/// In-memory form of a version "1" matrix file.
///
///   {"data": ..., "dims": [2, 2], "kind": "density", "normalized": true, "version": "1"}
///
/// `data` holds [re, im] pairs: a D-element list for kind "pure" and a D x D
/// row-major nested list otherwise. Witness files carry the materialized W in
/// `data` plus "form", "c" and "sigma" (nested like data). Hermitian files have
/// no "normalized" key.
struct MatrixFile {
    MatrixKind kind = MatrixKind::hermitian;
    Dims dims;
    std::vector<Complex> data;
    bool normalized = true;
    WitnessForm form = WitnessForm::c_minus_sigma;
    double c = 0;
    std::vector<Complex> sigma;
};

/// Compact JSON with sorted keys and every float printed with 17 significant
/// digits, newline-terminated. Throws ParseError on non-finite numbers.
std::string canonical_json(const nlohmann::json &value);

/// Throws ParseError on malformed or inconsistent input.
MatrixFile parse_matrix_file(std::string_view text);
std::string write_matrix_file(const MatrixFile &file);

MatrixFile read_matrix_file(const std::filesystem::path &path);
void save_matrix_file(const std::filesystem::path &path, const MatrixFile &file);

MatrixFile to_file(const DensityMatrix &d);
MatrixFile to_file(const PureState &p);
MatrixFile to_file(const Witness &w);
MatrixFile hermitian_file(const ComplexMatrix &m);

ComplexMatrix file_matrix(const MatrixFile &file);
/// density, or pure (as its projector).
DensityMatrix as_density(const MatrixFile &file);
PureState as_pure(const MatrixFile &file);
Witness as_witness(const MatrixFile &file);

nlohmann::json complex_json(Complex z);
nlohmann::json vector_json(const ComplexVector &v);

}  // namespace wforge

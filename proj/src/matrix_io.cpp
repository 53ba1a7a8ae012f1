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

#include "wforge/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wforge/errors.hpp"

namespace wforge {

using nlohmann::json;

std::string_view kind_name(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::density:
            return "density";
        case MatrixKind::pure:
            return "pure";
        case MatrixKind::hermitian:
            return "hermitian";
        case MatrixKind::witness:
            return "witness";
    }
    return "hermitian";
}

namespace {

void dump(const json &value, std::string &out) {
    switch (value.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto &[key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += json(key).dump();
                out += ':';
                dump(item, out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto &item : value) {
                if (!first) {
                    out += ',';
                }
                first = false;
                dump(item, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            const double x = value.get<double>();
            if (!std::isfinite(x)) {
                fail(ErrorCode::ParseError, "non-finite number cannot be written");
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            break;
        }
        default:
            out += value.dump();
    }
}

[[noreturn]] void bad(const std::string &what) {
    fail(ErrorCode::ParseError, what);
}

Complex parse_complex(const json &entry) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        bad("complex entries must be [re, im] number pairs");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
        bad("complex entries must be finite");
    }
    return {re, im};
}

std::vector<Complex> parse_square(const json &rows, std::size_t n, const char *field) {
    if (!rows.is_array() || rows.size() != n) {
        bad(std::string(field) + " must have one row per basis state");
    }
    std::vector<Complex> out;
    out.reserve(n * n);
    for (const auto &row : rows) {
        if (!row.is_array() || row.size() != n) {
            bad(std::string(field) + " rows must have one entry per basis state");
        }
        for (const auto &entry : row) {
            out.push_back(parse_complex(entry));
        }
    }
    return out;
}

json square_json(const std::vector<Complex> &entries, std::size_t n) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(complex_json(entries[i * n + j]));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json vector_json(const ComplexVector &v) {
    json out = json::array();
    for (Complex z : v.entries()) {
        out.push_back(complex_json(z));
    }
    return out;
}

std::string canonical_json(const json &value) {
    std::string out;
    dump(value, out);
    out += '\n';
    return out;
}

MatrixFile parse_matrix_file(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        bad("matrix file must be a JSON object");
    }
    if (!doc.contains("version") || doc["version"] != "1") {
        bad("unsupported or missing version (expected \"1\")");
    }
    MatrixFile file;
    const std::string kind = doc.value("kind", "");
    if (kind == "density") {
        file.kind = MatrixKind::density;
    } else if (kind == "pure") {
        file.kind = MatrixKind::pure;
    } else if (kind == "hermitian") {
        file.kind = MatrixKind::hermitian;
    } else if (kind == "witness") {
        file.kind = MatrixKind::witness;
    } else {
        bad("unknown kind '" + kind + "'");
    }

    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty()) {
        bad("dims must be a non-empty integer list");
    }
    for (const auto &d : doc["dims"]) {
        if (!d.is_number_integer() || d.get<long long>() < 1) {
            bad("dims entries must be positive integers");
        }
        file.dims.push_back(d.get<std::size_t>());
    }
    const std::size_t n = total_dim(file.dims);

    if (!doc.contains("data")) {
        bad("missing data");
    }
    if (file.kind == MatrixKind::pure) {
        const json &data = doc["data"];
        if (!data.is_array() || data.size() != n) {
            bad("pure data must list one amplitude per basis state");
        }
        for (const auto &entry : data) {
            file.data.push_back(parse_complex(entry));
        }
    } else {
        file.data = parse_square(doc["data"], n, "data");
    }

    if (file.kind != MatrixKind::hermitian) {
        if (!doc.contains("normalized") || !doc["normalized"].is_boolean()) {
            bad("missing boolean 'normalized'");
        }
        file.normalized = doc["normalized"].get<bool>();
    }

    if (file.kind == MatrixKind::witness) {
        if (!doc.contains("form") || !doc["form"].is_string()) {
            bad("witness needs a form");
        }
        file.form = parse_form(doc["form"].get<std::string>());
        if (!doc.contains("c") || !doc["c"].is_number()) {
            bad("witness needs a numeric c");
        }
        file.c = doc["c"].get<double>();
        if (!std::isfinite(file.c)) {
            bad("c must be finite");
        }
        if (!doc.contains("sigma")) {
            bad("witness needs sigma");
        }
        file.sigma = parse_square(doc["sigma"], n, "sigma");
        // data must be the materialized operator.
        const double sign = file.form == WitnessForm::c_minus_sigma ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex expected = sign * file.sigma[i * n + j];
                if (i == j) {
                    expected += -sign * file.c;
                }
                if (std::abs(expected - file.data[i * n + j]) > 1e-9) {
                    bad("witness data does not match its form, c and sigma");
                }
            }
        }
    }
    return file;
}

std::string write_matrix_file(const MatrixFile &file) {
    json doc;
    doc["version"] = "1";
    doc["kind"] = std::string(kind_name(file.kind));
    doc["dims"] = file.dims;
    const std::size_t n = total_dim(file.dims);
    if (file.kind == MatrixKind::pure) {
        json data = json::array();
        for (Complex z : file.data) {
            data.push_back(complex_json(z));
        }
        doc["data"] = std::move(data);
    } else {
        doc["data"] = square_json(file.data, n);
    }
    if (file.kind != MatrixKind::hermitian) {
        doc["normalized"] = file.normalized;
    }
    if (file.kind == MatrixKind::witness) {
        doc["form"] = std::string(form_name(file.form));
        doc["c"] = file.c;
        doc["sigma"] = square_json(file.sigma, n);
    }
    return canonical_json(doc);
}

MatrixFile read_matrix_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::ParseError, "cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_file(buffer.str());
}

void save_matrix_file(const std::filesystem::path &path, const MatrixFile &file) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::ParseError, "cannot write " + path.string());
    }
    out << write_matrix_file(file);
}

MatrixFile to_file(const DensityMatrix &d) {
    MatrixFile file;
    file.kind = MatrixKind::density;
    file.dims = d.dims();
    file.data.assign(d.matrix().entries().begin(), d.matrix().entries().end());
    file.normalized = d.normalized();
    return file;
}

MatrixFile to_file(const PureState &p) {
    MatrixFile file;
    file.kind = MatrixKind::pure;
    file.dims = p.dims();
    file.data.assign(p.vector().entries().begin(), p.vector().entries().end());
    file.normalized = p.normalized();
    return file;
}

MatrixFile to_file(const Witness &w) {
    MatrixFile file;
    file.kind = MatrixKind::witness;
    file.dims = w.dims();
    const ComplexMatrix wm = w.matrix();
    file.data.assign(wm.entries().begin(), wm.entries().end());
    file.normalized = w.sigma().normalized();
    file.form = w.form();
    file.c = w.c();
    file.sigma.assign(w.sigma().matrix().entries().begin(), w.sigma().matrix().entries().end());
    return file;
}

MatrixFile hermitian_file(const ComplexMatrix &m) {
    MatrixFile file;
    file.kind = MatrixKind::hermitian;
    file.dims = m.dims();
    file.data.assign(m.entries().begin(), m.entries().end());
    return file;
}

ComplexMatrix file_matrix(const MatrixFile &file) {
    if (file.kind == MatrixKind::pure) {
        return ComplexMatrix::projector(ComplexVector(file.dims, file.data));
    }
    return ComplexMatrix(file.dims, file.data);
}

DensityMatrix as_density(const MatrixFile &file) {
    if (file.kind != MatrixKind::density && file.kind != MatrixKind::pure) {
        fail(ErrorCode::ParseError, "expected a density or pure state file, got " + std::string(kind_name(file.kind)));
    }
    return DensityMatrix(file_matrix(file), file.normalized);
}

PureState as_pure(const MatrixFile &file) {
    if (file.kind != MatrixKind::pure) {
        fail(ErrorCode::ParseError, "expected a pure state file, got " + std::string(kind_name(file.kind)));
    }
    return PureState(ComplexVector(file.dims, file.data), file.normalized);
}

Witness as_witness(const MatrixFile &file) {
    if (file.kind != MatrixKind::witness) {
        fail(ErrorCode::ParseError, "expected a witness file, got " + std::string(kind_name(file.kind)));
    }
    return Witness(file.form, file.c, DensityMatrix(ComplexMatrix(file.dims, file.sigma), file.normalized));
}

}  // namespace wforge

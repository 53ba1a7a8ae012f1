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

#include "wforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wforge/errors.hpp"
#include "wforge/extend.hpp"
#include "wforge/matrix_io.hpp"
#include "wforge/oracle.hpp"
#include "wforge/product_opt.hpp"
#include "wforge/qstate.hpp"
#include "wforge/witness.hpp"

namespace wforge::cli {

using nlohmann::json;

namespace {

constexpr const char *kSeedEnv = "WITNESS_FORGE_SEED";

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::BadPartyIndex:
        case ErrorCode::NotHermitian:
        case ErrorCode::InvalidState:
        case ErrorCode::NotNormalized:
        case ErrorCode::UnsupportedDims:
            return kUsage;
        case ErrorCode::NoConvergence:
            return kNumerical;
        default:
            return kDomain;
    }
}

/// Thrown by a command that produced a complete report but wants a nonzero exit.
struct Verdict {
    int code;
};

std::uint64_t default_seed() {
    const char *env = std::getenv(kSeedEnv);
    if (env == nullptr || *env == '\0') {
        return kDefaultSeed;
    }
    try {
        std::size_t used = 0;
        const std::string text(env);
        const unsigned long long value = std::stoull(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::logic_error &) {
        fail(ErrorCode::ParseError, std::string(kSeedEnv) + " is not an unsigned integer");
    }
}

json tolerances() {
    return json{{"hermitian", kHermitianTolerance},
                {"state", kStateTolerance},
                {"interval", kIntervalTolerance},
                {"spectral_gap", kSpectralGap},
                {"positivity", kPositivityTolerance},
                {"negativity", kNegativityTolerance},
                {"seesaw_convergence", SeesawOptions{}.tolerance},
                {"seesaw_max_rounds", SeesawOptions{}.max_rounds}};
}

json product_json(const ProductState &state) {
    json factors = json::array();
    for (const auto &f : state.factors()) {
        factors.push_back(vector_json(f));
    }
    return factors;
}

json opt_json(const OptResult &r) {
    return json{{"value", r.value},
                {"state", product_json(r.state)},
                {"restarts_used", r.restarts_used},
                {"converged", r.converged}};
}

json report_json(const WitnessReport &r) {
    return json{{"min_product_expectation", r.min_product_expectation},
                {"min_is_upper_bound", r.min_is_upper_bound},
                {"witnessing_margin", r.witnessing_margin},
                {"is_witness", r.is_witness},
                {"certificate_product", product_json(r.certificate_product)},
                {"certificate_eigenvector", vector_json(r.certificate_eigenvector)}};
}

json spectrum_json(const SpectralDecomposition &sd) {
    json vectors = json::array();
    for (const auto &v : sd.eigenvectors) {
        vectors.push_back(vector_json(v));
    }
    return json{{"eigenvalues", sd.eigenvalues},
                {"eigenvectors", std::move(vectors)},
                {"rank", sd.rank(kStateTolerance)},
                {"lambda_min", sd.min_eigenvalue()},
                {"lambda_max", sd.max_eigenvalue()}};
}

json witness_summary(const Witness &w) {
    return json{{"form", std::string(form_name(w.form()))},
                {"c", w.c()},
                {"dims", w.dims()},
                {"sigma_normalized", w.sigma().normalized()}};
}

std::vector<std::string> split_list(const std::vector<std::string> &items) {
    std::vector<std::string> out;
    for (const auto &item : items) {
        std::stringstream stream(item);
        std::string piece;
        while (std::getline(stream, piece, ',')) {
            if (!piece.empty()) {
                out.push_back(piece);
            }
        }
    }
    return out;
}

Dims parse_dims(const std::string &text) {
    Dims dims;
    for (const auto &piece : split_list({text})) {
        try {
            std::size_t used = 0;
            const unsigned long d = std::stoul(piece, &used);
            if (used != piece.size() || d == 0) {
                throw std::invalid_argument(piece);
            }
            dims.push_back(d);
        } catch (const std::logic_error &) {
            fail(ErrorCode::ParseError, "bad dimension list '" + text + "'");
        }
    }
    if (dims.empty()) {
        fail(ErrorCode::ParseError, "empty dimension list");
    }
    return dims;
}

struct Common {
    int restarts = 32;
    std::optional<std::uint64_t> seed;
    bool timing = false;

    SeesawOptions options() const {
        SeesawOptions o;
        o.restarts = restarts;
        o.seed = seed.value_or(default_seed());
        return o;
    }
};

void add_search_flags(CLI::App *cmd, Common &common) {
    cmd->add_option("--restarts", common.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", common.seed, std::string("Seed (default: $") + kSeedEnv + " or built-in)");
}

// --- commands -------------------------------------------------------------

json cmd_spectral(const std::string &path, std::ostream &err) {
    const MatrixFile file = read_matrix_file(path);
    SpectralDecomposition sd = [&] {
        if (file.kind == MatrixKind::density) {
            return spectral(as_density(file));
        }
        if (file.kind == MatrixKind::hermitian) {
            return hermitian_eig(file_matrix(file));
        }
        fail(ErrorCode::ParseError, "spectral expects a density or hermitian file");
    }();
    err << "eigenvalues:";
    for (double x : sd.eigenvalues) {
        err << ' ' << x;
    }
    err << "\n";
    return spectrum_json(sd);
}

struct CboundsArgs {
    std::string path;
    std::string mode = "min";
    bool oracle = false;
    int resolution = 256;
};

json cmd_cbounds(const CboundsArgs &args, const Common &common, std::ostream &err) {
    const MatrixFile file = read_matrix_file(args.path);
    const ComplexMatrix m = file.kind == MatrixKind::hermitian ? file_matrix(file) : as_density(file).matrix();
    // c_min is the largest product expectation, c_max the smallest.
    const Extremum direction = args.mode == "min" ? Extremum::max : Extremum::min;
    OptResult bound = optimize_product(m, direction, common.options());
    SpectralDecomposition sd = hermitian_eig(m);
    json results{{"bound", args.mode == "min" ? "c_min" : "c_max"},
                 {"seesaw", opt_json(bound)},
                 {"value", bound.value},
                 {"one_sided", args.mode == "min" ? "lower bound on c_min" : "upper bound on c_max"},
                 {"spectral_bracket", json::array({sd.min_eigenvalue(), sd.max_eigenvalue()})}};
    err << "c_" << args.mode << " (see-saw): " << bound.value << "\n";
    if (args.oracle) {
        if (oracle_supports(m.dims())) {
            GridResult grid = grid_search(m, direction, args.resolution, true);
            results["oracle"] = json{{"value", grid.value},
                                     {"grid_value", grid.grid_value},
                                     {"resolution", args.resolution},
                                     {"grid_points", grid.grid_points}};
            err << "c_" << args.mode << " (grid oracle): " << grid.value << "\n";
        } else {
            results["oracle"] = json{{"skipped", "dims not supported by the grid oracle"}};
        }
    }
    return results;
}

struct MakeArgs {
    std::string sigma;
    std::string form = "c_minus_sigma";
    double c = 0;
    std::string check = "strict";
    std::string output;
};

json cmd_make(const MakeArgs &args, const Common &common, std::ostream &err) {
    const WitnessForm form = parse_form(args.form);
    DensityMatrix sigma = as_density(read_matrix_file(args.sigma));
    json results;
    CheckMode check = CheckMode::none;
    if (args.check == "strict") {
        check = CheckMode::strict;
        CInterval interval = admissible_interval(form, sigma, common.options());
        results["interval"] = json{{"lower", interval.lower},
                                   {"upper", interval.upper},
                                   {"lower_open", interval.lower_open},
                                   {"upper_open", interval.upper_open}};
    }
    Witness w = make_witness(form, std::move(sigma), args.c, check, common.options());
    save_matrix_file(args.output, to_file(w));
    results["witness"] = witness_summary(w);
    results["output"] = args.output;
    err << "wrote " << form_name(form) << " witness with c = " << args.c << " to " << args.output << "\n";
    return results;
}

struct VerifyArgs {
    std::string path;
    bool oracle = false;
    int resolution = 64;
    bool skip_interval = false;
};

json cmd_verify(const VerifyArgs &args, const Common &common, std::ostream &err, int &exit_code) {
    const Witness w = as_witness(read_matrix_file(args.path));
    json results{{"witness", witness_summary(w)}};
    if (!args.skip_interval) {
        make_witness(w.form(), w.sigma(), w.c(), CheckMode::strict, common.options());
        results["interval_check"] = "passed";
    }
    WitnessReport report = verify_witness(w, common.options());
    results["report"] = report_json(report);
    bool ok = report.is_witness;
    if (args.oracle) {
        if (oracle_supports(w.dims())) {
            WitnessReport grid = exhaustive_witness_check(w, args.resolution);
            results["oracle_report"] = report_json(grid);
            ok = ok && grid.is_witness;
        } else {
            results["oracle_report"] = json{{"skipped", "dims not supported by the grid oracle"}};
        }
    }
    results["is_witness"] = ok;
    err << (ok ? "witness: yes" : "witness: no") << " (min product expectation " << report.min_product_expectation
        << ", margin " << report.witnessing_margin << ")\n";
    exit_code = ok ? kOk : kDomain;
    return results;
}

json cmd_eval(const std::string &witness_path, const std::string &state_path, std::ostream &err) {
    const Witness w = as_witness(read_matrix_file(witness_path));
    const DensityMatrix rho = as_density(read_matrix_file(state_path));
    const double value = evaluate(w, rho);
    err << "tr(W rho) = " << value << (value < 0 ? "  (detected)" : "") << "\n";
    return json{{"value", value}, {"detected", value < 0}};
}

struct ExtendArgs {
    std::string path;
    std::string method;
    std::string selection;
    std::optional<std::size_t> ancilla_dim;
    std::vector<std::string> tails;
    std::string tail_dims;
    std::optional<double> c_prime;
    std::string output;
};

std::vector<PureState> load_pure_tails(const std::vector<std::string> &paths) {
    std::vector<PureState> out;
    for (const auto &p : split_list(paths)) {
        out.push_back(as_pure(read_matrix_file(p)));
    }
    return out;
}

json cmd_extend(const ExtendArgs &args, const Common &common, std::ostream &err) {
    const Witness w = as_witness(read_matrix_file(args.path));
    std::optional<Witness> extended;
    json method{{"name", args.method}};
    if (args.method == "purify") {
        extended = purify_extend(w, args.ancilla_dim);
        const auto tails = load_pure_tails(args.tails);
        if (!tails.empty()) {
            extended = append_pure_tails(*extended, tails);
        }
    } else if (args.method == "partial") {
        if (!args.ancilla_dim) {
            fail(ErrorCode::ParseError, "--method partial needs --ancilla-dim");
        }
        const PurificationSelection sel = PurificationSelection::parse(args.selection, *args.ancilla_dim);
        method["selection"] = sel.to_string();
        extended = partial_purify_extend(w, sel, args.c_prime);
        const auto tails = load_pure_tails(args.tails);
        if (!tails.empty()) {
            extended = append_pure_tails(*extended, tails);
        }
    } else if (args.method == "mixed") {
        std::vector<DensityMatrix> tails;
        for (const auto &p : split_list(args.tails)) {
            tails.push_back(as_density(read_matrix_file(p)));
        }
        extended = mixed_tensor_extend(w, tails);
    } else if (args.method == "pure-tails") {
        extended = append_pure_tails(w, load_pure_tails(args.tails));
    } else if (args.method == "identity") {
        const Dims dims = parse_dims(args.tail_dims);
        extended = identity_extend(w, dims);
    } else {
        fail(ErrorCode::ParseError, "unknown extension method '" + args.method + "'");
    }
    save_matrix_file(args.output, to_file(*extended));
    WitnessReport report = verify_witness(*extended, common.options());
    err << "extended " << w.dims().size() << "-party witness to dims [";
    for (std::size_t k = 0; k < extended->dims().size(); ++k) {
        err << (k ? "," : "") << extended->dims()[k];
    }
    err << "], c = " << extended->c() << ", witness: " << (report.is_witness ? "yes" : "no") << "\n";
    return json{{"method", std::move(method)},
                {"input", witness_summary(w)},
                {"witness", witness_summary(*extended)},
                {"output", args.output},
                {"report", report_json(report)}};
}

json cmd_enumerate(const std::string &path, std::size_t ancilla_dim, std::ostream &err) {
    const DensityMatrix d = as_density(read_matrix_file(path));
    const SpectralDecomposition sd = spectral(d);
    const std::size_t rank = sd.rank(kStateTolerance);
    const std::uint64_t formula = count_partial_purifications(rank, ancilla_dim);
    std::vector<PurificationSelection> selections;
    try {
        selections = enumerate_partial_purifications(sd, ancilla_dim);
    } catch (const Error &e) {
        if (e.code() == ErrorCode::CountTooLarge) {
            throw Error(ErrorCode::CountTooLarge,
                        std::string(e.what()) + " (formula count " + std::to_string(formula) + ")");
        }
        throw;
    }
    const bool nondegenerate = sd.size() < 2 || rank < 2 ||
                               sd.max_eigenvalue() - sd.eigenvalues[sd.size() - 2] > 1e-12;
    json list = json::array();
    for (const auto &s : selections) {
        list.push_back(s.to_string());
    }
    if (nondegenerate && selections.size() != formula) {
        fail(ErrorCode::NoConvergence, "enumeration disagrees with the closed-form count");
    }
    err << selections.size() << " partial purifications (formula: " << formula << ")\n";
    return json{{"rank", rank},
                {"ancilla_dim", ancilla_dim},
                {"selections", std::move(list)},
                {"count", selections.size()},
                {"formula_count", formula},
                {"nondegenerate_top", nondegenerate},
                {"counts_match", selections.size() == formula}};
}

struct GenArgs {
    std::string name;
    double q = 0;
    std::string dims = "2,2";
    std::size_t index = 0;
    std::vector<double> values;
    bool pure = false;
    std::string output;
};

MatrixFile cmd_gen(const GenArgs &args) {
    if (args.name == "isotropic") {
        return to_file(isotropic(args.q));
    }
    if (args.name == "bell") {
        return args.pure ? to_file(bell_state()) : to_file(DensityMatrix::from_pure(bell_state()));
    }
    if (args.name == "maximally-mixed") {
        return to_file(maximally_mixed(parse_dims(args.dims)));
    }
    if (args.name == "flip-shifted") {
        return to_file(flip_shifted_state());
    }
    if (args.name == "basis") {
        PureState ket(ComplexVector::basis(parse_dims(args.dims), args.index));
        return args.pure ? to_file(ket) : to_file(DensityMatrix::from_pure(ket));
    }
    if (args.name == "diag") {
        const Dims dims = parse_dims(args.dims);
        return to_file(DensityMatrix(ComplexMatrix::diagonal(dims, args.values)));
    }
    fail(ErrorCode::ParseError, "unknown generator '" + args.name + "'");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"wforge: entanglement witness construction and extension"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--timing", common.timing, "Add wall time to the report");

    std::function<json(int &)> action;
    std::string command;

    std::string spectral_path;
    auto *spectral_cmd = app.add_subcommand("spectral", "Eigen-decomposition of a density or Hermitian matrix");
    spectral_cmd->add_option("input", spectral_path)->required();
    spectral_cmd->callback([&] { action = [&](int &) { return cmd_spectral(spectral_path, err); }; });

    CboundsArgs cb;
    auto *cb_cmd = app.add_subcommand("cbounds", "c_min / c_max by optimization over product states");
    cb_cmd->add_option("input", cb.path)->required();
    cb_cmd->add_option("--mode", cb.mode)->check(CLI::IsMember({"min", "max"}));
    cb_cmd->add_flag("--oracle", cb.oracle, "Cross-check with the grid oracle");
    cb_cmd->add_option("--resolution", cb.resolution, "Grid oracle resolution");
    add_search_flags(cb_cmd, common);
    cb_cmd->callback([&] { action = [&](int &) { return cmd_cbounds(cb, common, err); }; });

    MakeArgs mk;
    auto *make_cmd = app.add_subcommand("make", "Build a witness from sigma, a form and c");
    make_cmd->add_option("--sigma", mk.sigma)->required();
    make_cmd->add_option("--form", mk.form)->check(CLI::IsMember({"c_minus_sigma", "sigma_minus_c"}));
    make_cmd->add_option("--c", mk.c)->required();
    make_cmd->add_option("--check", mk.check)->check(CLI::IsMember({"strict", "none"}));
    make_cmd->add_option("-o,--output", mk.output)->required();
    add_search_flags(make_cmd, common);
    make_cmd->callback([&] { action = [&](int &) { return cmd_make(mk, common, err); }; });

    VerifyArgs vf;
    auto *verify_cmd = app.add_subcommand("verify", "Check that a witness file is an entanglement witness");
    verify_cmd->add_option("input", vf.path)->required();
    verify_cmd->add_flag("--oracle", vf.oracle, "Also run the exhaustive grid check");
    verify_cmd->add_option("--resolution", vf.resolution, "Grid oracle resolution");
    verify_cmd->add_flag("--skip-interval", vf.skip_interval, "Do not re-check c against its interval");
    add_search_flags(verify_cmd, common);
    verify_cmd->callback([&] { action = [&](int &code) { return cmd_verify(vf, common, err, code); }; });

    std::string eval_witness;
    std::string eval_state;
    auto *eval_cmd = app.add_subcommand("eval", "tr(W rho)");
    eval_cmd->add_option("witness", eval_witness)->required();
    eval_cmd->add_option("state", eval_state)->required();
    eval_cmd->callback([&] { action = [&](int &) { return cmd_eval(eval_witness, eval_state, err); }; });

    ExtendArgs ex;
    auto *extend_cmd = app.add_subcommand("extend", "Extend a witness to more parties");
    extend_cmd->add_option("input", ex.path)->required();
    extend_cmd->add_option("--method", ex.method)
        ->required()
        ->check(CLI::IsMember({"purify", "partial", "mixed", "identity", "pure-tails"}));
    extend_cmd->add_option("--selection", ex.selection, "eigIndex:ancillaSlot,...");
    extend_cmd->add_option("--ancilla-dim", ex.ancilla_dim);
    extend_cmd->add_option("--tails", ex.tails, "Tail state files (comma separated or repeated)");
    extend_cmd->add_option("--tail-dims", ex.tail_dims, "Identity tail dimensions, e.g. 4 or 2,2");
    extend_cmd->add_option("--c-prime", ex.c_prime);
    extend_cmd->add_option("-o,--output", ex.output)->required();
    add_search_flags(extend_cmd, common);
    extend_cmd->callback([&] { action = [&](int &) { return cmd_extend(ex, common, err); }; });

    std::string enum_path;
    std::size_t enum_dim = 1;
    auto *enum_cmd = app.add_subcommand("enumerate", "List partial purifications that keep the top eigenpair");
    enum_cmd->add_option("input", enum_path)->required();
    enum_cmd->add_option("--ancilla-dim", enum_dim)->required()->check(CLI::PositiveNumber);
    enum_cmd->callback([&] { action = [&](int &) { return cmd_enumerate(enum_path, enum_dim, err); }; });

    GenArgs gen;
    bool gen_called = false;
    auto *gen_cmd = app.add_subcommand("gen", "Write a named state");
    gen_cmd->add_option("name", gen.name, "isotropic | bell | maximally-mixed | flip-shifted | basis | diag")
        ->required();
    gen_cmd->add_option("--q", gen.q);
    gen_cmd->add_option("--dims", gen.dims);
    gen_cmd->add_option("--index", gen.index);
    gen_cmd->add_option("--values", gen.values)->delimiter(',');
    gen_cmd->add_flag("--pure", gen.pure, "Write a ket instead of a density matrix");
    gen_cmd->add_option("-o,--output", gen.output);
    gen_cmd->callback([&] { gen_called = true; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    command = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    json report{{"command", command}, {"args", args}};
    int exit_code = kOk;
    try {
        if (gen_called) {
            const MatrixFile file = cmd_gen(gen);
            if (gen.output.empty()) {
                out << write_matrix_file(file);
                return kOk;
            }
            save_matrix_file(gen.output, file);
            report["results"] = json{{"output", gen.output}, {"kind", std::string(kind_name(file.kind))}};
        } else {
            const SeesawOptions options = common.options();
            report["seed"] = options.seed;
            report["restarts"] = options.restarts;
            report["tolerances"] = tolerances();
            report["results"] = action(exit_code);
        }
    } catch (const Error &e) {
        report["error"] = json{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
        err << "error: " << e.what() << "\n";
        exit_code = exit_code_for(e.code());
    }
    if (common.timing) {
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    out << canonical_json(report);
    return exit_code;
}

}  // namespace wforge::cli

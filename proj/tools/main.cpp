// commcalc: evaluate functions of matrix commutator/anti-commutator
// operators, their derivative formulas, material-point constitutive models,
// and the library's property-verification suites from the command line.
//
// Exit codes: 0 success, 1 I/O or configuration error, 2 mathematical
// precondition violation, 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "commcalc/bivariate.hpp"
#include "commcalc/closed_form.hpp"
#include "commcalc/derivatives.hpp"
#include "commcalc/errors.hpp"
#include "commcalc/io.hpp"
#include "commcalc/matrix.hpp"
#include "commcalc/mechanics.hpp"
#include "commcalc/scalar_functions.hpp"
#include "commcalc/spectral.hpp"
#include "commcalc_testing/suites.hpp"

namespace {

using namespace commcalc;

struct ApplyConfig {
    std::string fn;
    std::optional<double> param;
    std::string kind = "commutator";
    std::string method = "spectral";
    std::string g_path;
    std::string x_path;
    std::string out;
};

struct DerivativeConfig {
    std::string fn;
    std::optional<double> param;
    std::string variant = "dk";
    std::string base_path;
    std::string dir_path;
    std::string out;
};

struct SimulateConfig {
    std::string model;
    std::string pair_with;
    std::string flow;
    std::string b0_path;
    int dim = 2;
    double tau = 1.0;
    double dt = 0.0;  // 0 = tau/200
    double T = 0.0;
    std::string out;
};

struct VerifyConfig {
    std::uint64_t seed = 0;
    std::string only;
    std::string out;
    bool inject_fault = false;
};

struct ReportConfig {
    std::string a_path;
    std::string b_path;
    std::string x_path;
    std::vector<std::string> grad_paths;
    double r = 0.0;
    int terms = 8;
    std::string out;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        io::write_file(out_path, text);
}

std::string double_field(const char* key, double v) {
    return std::string("\"") + key + "\": " + io::format_double_9(v);
}

std::string provenance_json(const std::string& function,
                            const std::string& variant,
                            const SpectralDecomp& dec) {
    std::ostringstream os;
    os << "{\"function\": \"" << function << "\", \"variant\": \"" << variant
       << "\", \"eigenvalues\": [";
    for (int i = 0; i < dec.dim(); ++i)
        os << (i ? ", " : "") << io::format_double_9(dec.eigs[i]);
    os << "], \"clusters\": [";
    for (std::size_t k = 0; k < dec.clusters.size(); ++k) {
        os << (k ? ", " : "") << "[";
        for (std::size_t j = 0; j < dec.clusters[k].size(); ++j)
            os << (j ? ", " : "") << dec.clusters[k][j];
        os << "]";
    }
    os << "]}";
    return os.str();
}

// The result matrix goes to --out (or stdout) in the plain matrix format so
// that outputs of algebraically equivalent routes can be compared byte for
// byte; the provenance block goes to stdout alongside.
void emit_matrix_with_provenance(const Matrix& result,
                                 const std::string& provenance,
                                 const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << "{\"result\": " << io::matrix_to_json(result)
                  << ", \"provenance\": " << provenance << "}\n";
    } else {
        io::write_file(out_path, io::matrix_to_json(result) + "\n");
        std::cout << provenance << "\n";
    }
}

ScalarFn1 resolve_function(const std::string& name,
                           const std::optional<double>& param) {
    if (name == "custom") {
        // Demonstration hook for user-supplied kernels: the bare reciprocal
        // carries no continuous extension, so applying it across a spectrum
        // pair on its singular locus reports the offending pair.
        ScalarFn1 f;
        f.name = "custom";
        f.eval = [](double x) { return 1.0 / x; };
        return f;
    }
    return builtin(name, param);
}

int cmd_apply(const ApplyConfig& cfg) {
    const SymMatrix G(io::read_matrix_json(cfg.g_path));
    const Matrix X = io::read_matrix_json(cfg.x_path);
    const ScalarFn1 f = resolve_function(cfg.fn, cfg.param);

    OperatorKind kind;
    if (cfg.kind == "commutator")
        kind = OperatorKind::commutator;
    else if (cfg.kind == "anticommutator")
        kind = OperatorKind::anticommutator;
    else
        throw std::invalid_argument("apply: unknown --kind '" + cfg.kind +
                                    "' (commutator|anticommutator)");

    const SpectralDecomp dec = schur_decompose(G);
    Matrix result;
    if (cfg.method == "spectral") {
        result = apply_commutator_function(f, kind, dec, X);
    } else if (cfg.method == "closed") {
        if (kind != OperatorKind::commutator)
            throw std::invalid_argument(
                "apply: the closed-form route covers only the commutator "
                "operator");
        result = apply_closed_form(f, G, X);
    } else {
        throw std::invalid_argument("apply: unknown --method '" + cfg.method +
                                    "' (spectral|closed)");
    }
    emit_matrix_with_provenance(
        result, provenance_json(f.name, cfg.kind + "/" + cfg.method, dec),
        cfg.out);
    return 0;
}

int cmd_derivative(const DerivativeConfig& cfg) {
    const SymMatrix base(io::read_matrix_json(cfg.base_path));
    const Matrix dir = io::read_matrix_json(cfg.dir_path);
    const Matrix result = evaluate_derivative(
        DerivativeRequest{cfg.fn, cfg.param, cfg.variant, base, dir});
    emit_matrix_with_provenance(
        result,
        provenance_json(cfg.fn, cfg.variant, schur_decompose(base)),
        cfg.out);
    return 0;
}

FlowProtocol parse_flow(const std::string& text, int dim) {
    FlowProtocol proto;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::vector<std::pair<std::string, std::string>> kvs;
    if (colon != std::string::npos) {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument(
                    "--flow: expected key=value, got '" + item + "'");
            kvs.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
    }
    auto as_double = [](const std::pair<std::string, std::string>& kv) {
        try {
            std::size_t used = 0;
            const double v = std::stod(kv.second, &used);
            if (used != kv.second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("--flow: '" + kv.second +
                                        "' is not a number for key '" +
                                        kv.first + "'");
        }
    };

    if (head == "constant") {
        proto.kind = FlowProtocol::Kind::constant;
        proto.constant_gradv = Matrix::Zero(dim, dim);
        for (const auto& kv : kvs) {
            if (kv.first == "gradv")
                proto.constant_gradv = io::read_matrix_json(kv.second);
            else
                throw std::invalid_argument("--flow constant: unknown key '" +
                                            kv.first + "'");
        }
        return proto;
    }
    if (head == "shear")
        proto.kind = FlowProtocol::Kind::shear;
    else if (head == "extension")
        proto.kind = FlowProtocol::Kind::extension;
    else if (head == "sin_shear")
        proto.kind = FlowProtocol::Kind::sin_shear;
    else
        throw std::invalid_argument(
            "--flow: unknown protocol '" + head +
            "' (constant|shear|extension|sin_shear)");
    for (const auto& kv : kvs) {
        if (kv.first == "rate")
            proto.rate = as_double(kv);
        else if (kv.first == "freq" &&
                 proto.kind == FlowProtocol::Kind::sin_shear)
            proto.frequency = as_double(kv);
        else
            throw std::invalid_argument("--flow " + head + ": unknown key '" +
                                        kv.first + "'");
    }
    return proto;
}

ConstitutiveModel parse_model(const std::string& name) {
    if (name == "oldroyd_B") return ConstitutiveModel::oldroyd_B;
    if (name == "log_oldroyd") return ConstitutiveModel::log_oldroyd;
    if (name == "linearized_log") return ConstitutiveModel::linearized_log;
    if (name == "giesekus_interp") return ConstitutiveModel::giesekus_interp;
    throw std::invalid_argument(
        "--model: unknown model '" + name +
        "' (oldroyd_B|log_oldroyd|linearized_log|giesekus_interp)");
}

bool evolves_conformation(ConstitutiveModel m) {
    return m == ConstitutiveModel::oldroyd_B ||
           m == ConstitutiveModel::giesekus_interp;
}

std::vector<io::TrajectoryRow> to_rows(const Trajectory& t) {
    std::vector<io::TrajectoryRow> rows(t.times.size());
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        rows[k].t = t.times[k];
        const Matrix& s = t.states[k];
        rows[k].state.reserve(static_cast<std::size_t>(s.size()));
        for (int i = 0; i < s.rows(); ++i)
            for (int j = 0; j < s.cols(); ++j)
                rows[k].state.push_back(s(i, j));
        rows[k].cross_residual = t.cross_residuals[k];
    }
    return rows;
}

int cmd_simulate(const SimulateConfig& cfg) {
    const ConstitutiveModel model = parse_model(cfg.model);
    Matrix B0 = cfg.b0_path.empty()
                    ? Matrix(Matrix::Identity(cfg.dim, cfg.dim))
                    : io::read_matrix_json(cfg.b0_path);
    const int dim = static_cast<int>(B0.rows());
    const FlowProtocol proto = parse_flow(cfg.flow, dim);
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.tau / 200.0;

    Trajectory traj;
    if (!cfg.pair_with.empty()) {
        const ConstitutiveModel partner = parse_model(cfg.pair_with);
        if (evolves_conformation(model) == evolves_conformation(partner))
            throw std::invalid_argument(
                "simulate: a paired run needs one conformation-variable "
                "model and one Hencky-variable model");
        const ConstitutiveModel conf =
            evolves_conformation(model) ? model : partner;
        const ConstitutiveModel henck =
            evolves_conformation(model) ? partner : model;
        auto [tB, tH] =
            integrate_paired(B0, proto, cfg.tau, conf, henck, dt, cfg.T);
        traj = evolves_conformation(model) ? std::move(tB) : std::move(tH);
    } else {
        MaterialState s0;
        s0.time = 0.0;
        if (evolves_conformation(model)) {
            s0.rep = StateRep::conformation;
            s0.value = B0;
        } else {
            s0.rep = StateRep::hencky;
            s0.value = 0.5 * matrix_function(builtin("log"), SymMatrix(B0));
        }
        traj = integrate(s0, proto, cfg.tau, model, dt, cfg.T);
    }
    emit(io::trajectory_to_csv(dim, to_rows(traj)), cfg.out);
    return 0;
}

int cmd_verify(const VerifyConfig& cfg) {
    testing::SuiteOptions opts;
    opts.seed = cfg.seed;
    opts.only = cfg.only;
    opts.inject_fault = cfg.inject_fault;
    const auto results = testing::run_property_suites(opts);
    const std::string report = testing::format_report(cfg.seed, results);
    std::cout << report;
    if (!cfg.out.empty()) io::write_file(cfg.out, report);
    return testing::all_passed(results) ? 0 : 3;
}

int cmd_gap(const ReportConfig& cfg) {
    const SymMatrix A(io::read_matrix_json(cfg.a_path));
    const Matrix X = io::read_matrix_json(cfg.x_path);
    const GapReport rep = logconv_gap(A, X, cfg.r);
    std::ostringstream os;
    os << "{" << double_field("gap", rep.gap) << ", "
       << double_field("series", rep.series)
       << ", \"terms_used\": " << rep.terms_used << "}\n";
    emit(os.str(), cfg.out);
    return 0;
}

std::vector<SymMatrix> read_grads(const std::vector<std::string>& paths) {
    std::vector<SymMatrix> grads;
    grads.reserve(paths.size());
    for (const std::string& p : paths)
        grads.emplace_back(io::read_matrix_json(p));
    return grads;
}

int cmd_sobolev(const ReportConfig& cfg) {
    const SymMatrix B(io::read_matrix_json(cfg.b_path));
    const SobolevReport rep =
        sobolev_identity(B, read_grads(cfg.grad_paths), cfg.r);
    std::ostringstream os;
    os << "{" << double_field("lhs", rep.lhs) << ", "
       << double_field("rhs", rep.rhs) << ", "
       << double_field("commutator_energy", rep.commutator_energy) << "}\n";
    emit(os.str(), cfg.out);
    return 0;
}

int cmd_dissipation(const ReportConfig& cfg) {
    const SymMatrix B(io::read_matrix_json(cfg.b_path));
    const DissipationReport rep =
        dissipation_compare(B, read_grads(cfg.grad_paths), cfg.terms);
    std::ostringstream os;
    os << "{" << double_field("full", rep.full) << ", \"partials\": [";
    for (std::size_t n = 0; n < rep.partials.size(); ++n)
        os << (n ? ", " : "") << io::format_double_9(rep.partials[n]);
    os << "]}\n";
    emit(os.str(), cfg.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Functional calculus on matrix commutator and anti-commutator "
        "operators: evaluation, derivative formulas, constitutive-model "
        "integration, and property verification."};
    app.require_subcommand(1);

    ApplyConfig apply_cfg;
    auto* apply = app.add_subcommand(
        "apply", "Apply f of the commutator or anti-commutator operator of "
                 "G to X");
    apply->add_option("--fn", apply_cfg.fn, "Scalar function name")
        ->required();
    double apply_param = 0.0;
    auto* apply_param_opt = apply->add_option(
        "--param", apply_param, "Function parameter (exponent r, ...)");
    apply->add_option("--kind", apply_cfg.kind,
                      "commutator|anticommutator (default commutator)");
    apply->add_option("--method", apply_cfg.method,
                      "spectral|closed (default spectral)");
    apply->add_option("--G", apply_cfg.g_path, "Symmetric matrix JSON file")
        ->required();
    apply->add_option("--X", apply_cfg.x_path, "Operand matrix JSON file")
        ->required();
    apply->add_option("--out", apply_cfg.out, "Result file (default stdout)");

    DerivativeConfig deriv_cfg;
    auto* deriv = app.add_subcommand(
        "derivative",
        "Directional derivative of a matrix function at a symmetric base");
    deriv->add_option("--fn", deriv_cfg.fn,
                      "exp|log|power|cosh|sinh|cos|sin")
        ->required();
    double deriv_param = 0.0;
    auto* deriv_param_opt = deriv->add_option(
        "--param", deriv_param, "Exponent r (power only)");
    deriv->add_option("--variant", deriv_cfg.variant,
                      "E0..E4, L0..L6, PP0|PP00|PP1|PP2, anticomm|exp_ac, "
                      "or dk (default dk)");
    deriv->add_option("--base", deriv_cfg.base_path,
                      "Base point JSON file (symmetric)")
        ->required();
    deriv->add_option("--dir", deriv_cfg.dir_path,
                      "Direction matrix JSON file")
        ->required();
    deriv->add_option("--out", deriv_cfg.out, "Result file (default stdout)");

    SimulateConfig sim_cfg;
    auto* sim = app.add_subcommand(
        "simulate", "Integrate a constitutive model along a flow protocol");
    sim->add_option("--model", sim_cfg.model,
                    "oldroyd_B|log_oldroyd|linearized_log|giesekus_interp")
        ->required();
    sim->add_option("--pair-with", sim_cfg.pair_with,
                    "Integrate alongside this model from the same initial "
                    "conformation and record cross residuals");
    sim->add_option("--flow", sim_cfg.flow,
                    "constant[:gradv=file]|shear:rate=R|extension:rate=R|"
                    "sin_shear:rate=R,freq=F")
        ->required();
    sim->add_option("--b0", sim_cfg.b0_path,
                    "Initial conformation JSON (default identity; Hencky "
                    "models start from log(B0)/2)");
    sim->add_option("--dim", sim_cfg.dim,
                    "Dimension when --b0 is omitted (default 2)");
    sim->add_option("--tau", sim_cfg.tau, "Relaxation time (> 0)")
        ->required();
    sim->add_option("--dt", sim_cfg.dt, "Step size (default tau/200)");
    sim->add_option("--T", sim_cfg.T, "Final time (>= 0)")->required();
    sim->add_option("--out", sim_cfg.out, "CSV file (default stdout)");

    VerifyConfig verify_cfg;
    auto* verify = app.add_subcommand(
        "verify", "Run the property-verification suites");
    verify->add_option("--seed", verify_cfg.seed,
                       "Sample seed (default 0)")
        ->envname("COMMCALC_SEED");
    verify->add_option("--only", verify_cfg.only,
                       "Run only properties whose name contains this text");
    verify->add_option("--out", verify_cfg.out,
                       "Also write the report to this file");
    verify->add_flag("--inject-fault", verify_cfg.inject_fault)->group("");

    ReportConfig gap_cfg;
    auto* gap = app.add_subcommand(
        "gap", "Log-convexity gap of A along X and its commutator series");
    gap->add_option("--A", gap_cfg.a_path, "Positive definite JSON file")
        ->required();
    gap->add_option("--X", gap_cfg.x_path, "Direction JSON file")->required();
    gap->add_option("--r", gap_cfg.r, "Interpolation offset")->required();
    gap->add_option("--out", gap_cfg.out, "Result file (default stdout)");

    ReportConfig sob_cfg;
    auto* sob = app.add_subcommand(
        "sobolev", "Power-gradient energy identity for a positive field "
                   "value and its gradient components");
    sob->add_option("--B", sob_cfg.b_path, "Positive definite JSON file")
        ->required();
    sob->add_option("--grads", sob_cfg.grad_paths,
                    "Gradient component JSON files (one per direction)")
        ->required();
    sob->add_option("--r", sob_cfg.r, "Power exponent (not 0 or -1)")
        ->required();
    sob->add_option("--out", sob_cfg.out, "Result file (default stdout)");

    ReportConfig dis_cfg;
    auto* dis = app.add_subcommand(
        "dissipation", "Weighted gradient energy against the cumulative "
                       "sums of its commutator expansion");
    dis->add_option("--B", dis_cfg.b_path, "Positive definite JSON file")
        ->required();
    dis->add_option("--grads", dis_cfg.grad_paths,
                    "Gradient component JSON files")
        ->required();
    dis->add_option("--N", dis_cfg.terms, "Expansion order (default 8)");
    dis->add_option("--out", dis_cfg.out, "Result file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (apply->parsed()) {
            if (apply_param_opt->count() > 0) apply_cfg.param = apply_param;
            return cmd_apply(apply_cfg);
        }
        if (deriv->parsed()) {
            if (deriv_param_opt->count() > 0) deriv_cfg.param = deriv_param;
            return cmd_derivative(deriv_cfg);
        }
        if (sim->parsed()) return cmd_simulate(sim_cfg);
        if (verify->parsed()) return cmd_verify(verify_cfg);
        if (gap->parsed()) return cmd_gap(gap_cfg);
        if (sob->parsed()) return cmd_sobolev(sob_cfg);
        if (dis->parsed()) return cmd_dissipation(dis_cfg);
    } catch (const commcalc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const commcalc::MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

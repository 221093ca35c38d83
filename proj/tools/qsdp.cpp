// Copyright 2026 The qsdp Authors
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

// qsdp command-line front end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsdp/qsdp.hpp"

namespace {

using qsdp::ComplexMatrix;
using qsdp::DensityOperator;
using qsdp::Index;
using qsdp::KrausChannel;
using Row = nlohmann::ordered_json;

enum Exit { ok = 0, usage = 2, solver = 3, io = 4 };

struct Config {
    std::string format = "json";
    std::string out;
    std::optional<double> tol;
    int max_iter = 200;
    bool verbose = false;
    bool timing = false;
    std::uint64_t seed = 1;

    std::string preset;
    std::string input;
    std::string channel;
    std::string export_sdpa;
    std::vector<double> grid;
    double lambda = 0.0, p = 0.1, q = 0.3, alpha = 1.5, t = 0.5;
    int d = 2;
    int k = 1;
    bool ppt = true;
    std::string sdpa_path;
};

/// Rounds to 12 significant digits, the report precision.
double r12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr) + 0.0;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

qsdp::sdp::SolverOptions solver_options(const Config& cfg) {
    qsdp::sdp::SolverOptions o;
    double tol = 1e-8;
    if (const char* env = std::getenv("QSDP_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || !(v > 0.0)) throw qsdp::DomainError("QSDP_TOL must be a positive number");
        tol = v;
    }
    if (cfg.tol) tol = *cfg.tol;
    if (!(tol > 0.0)) throw qsdp::DomainError("--tol must be positive");
    o.tol_gap = tol;
    o.tol_feas = tol;
    o.max_iter = cfg.max_iter;
    if (cfg.verbose) o.log = &std::cerr;
    return o;
}

/// Final report. Rows hold the per-instance payload.
struct Report {
    explicit Report(std::string name) : subcommand(std::move(name)) {}
    std::string subcommand;
    Row inputs = Row::object();
    std::vector<Row> rows;
    bool failed = false;
};

void add_solver_stats(Row& row, const qsdp::sdp::SdpSolution& s) {
    row["status"] = qsdp::sdp::to_string(s.status);
    row["iterations"] = s.iterations;
    row["gap"] = r12(s.gap);
}

std::string csv_cell(const Row& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return fmt12(v.get<double>());
    return v.dump();
}

void emit(const Report& rep, const Config& cfg, double seconds) {
    std::ostringstream os;
    if (cfg.format == "csv") {
        std::vector<std::string> keys;
        for (const auto& r : rep.rows)
            for (const auto& [key, _] : r.items())
                if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
        os << "\n";
        for (const auto& r : rep.rows) {
            for (std::size_t i = 0; i < keys.size(); ++i)
                os << (i ? "," : "") << (r.contains(keys[i]) ? csv_cell(r.at(keys[i])) : "");
            os << "\n";
        }
    } else {
        Row j;
        j["tool"] = "qsdp";
        j["version"] = qsdp::version;
        j["subcommand"] = rep.subcommand;
        j["inputs"] = rep.inputs;
        j["results"] = rep.rows;
        const auto opt = solver_options(cfg);
        j["tolerances"] = Row{{"tol_gap", opt.tol_gap}, {"tol_feas", opt.tol_feas}, {"max_iter", opt.max_iter}};
        if (cfg.timing) j["wall_time_s"] = seconds;
        os << j.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
        std::cout.flush();
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw qsdp::IoError("cannot open '" + cfg.out + "' for writing");
        f << os.str();
        if (!f) throw qsdp::IoError("write to '" + cfg.out + "' failed");
    }
}

// ---------------------------------------------------------------------------
// Named channels

KrausChannel named_channel(const std::string& name, const Config& c) {
    if (name == "identity") return qsdp::identity_channel(c.d);
    if (name == "erasure") return qsdp::erasure(c.d, c.p);
    if (name == "depolarizing") return qsdp::depolarizing_qubit_p(c.p);
    if (name == "depolarizing-lambda") return qsdp::depolarizing_qubit(c.lambda);
    if (name == "qudit-depolarizing") return qsdp::depolarizing_qudit(c.d, c.lambda);
    if (name == "dephasing") return qsdp::dephasing(c.q);
    if (name == "werner-holevo-1") return qsdp::werner_holevo_1(c.d);
    if (name == "werner-holevo-2") return qsdp::werner_holevo_2(c.d);
    if (name == "measure") return qsdp::measure_computational();
    throw qsdp::DomainError("unknown channel '" + name +
                            "' (identity, erasure, depolarizing, depolarizing-lambda, qudit-depolarizing, "
                            "dephasing, werner-holevo-1, werner-holevo-2, measure)");
}

DensityOperator density_from_json(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw qsdp::ParseError(std::string("missing field \"") + key + "\"");
    return DensityOperator(qsdp::json_io::matrix_from_json(j.at(key)));
}

// ---------------------------------------------------------------------------
// Subcommands

Report cmd_discriminate(const Config& cfg) {
    using namespace qsdp;
    Report rep{"discriminate"};
    std::vector<DensityOperator> states;
    std::vector<double> priors;
    if (!cfg.input.empty()) {
        const auto j = json_io::load_file(cfg.input);
        if (!j.contains("priors") || !j.contains("states") || !j.at("states").is_array())
            throw ParseError(cfg.input + ": expected {\"priors\": [..], \"states\": [matrix, ..]}");
        priors = j.at("priors").get<std::vector<double>>();
        for (const auto& s : j.at("states")) states.emplace_back(json_io::matrix_from_json(s));
        rep.inputs["input"] = cfg.input;
    } else {
        const std::string preset = cfg.preset.empty() ? "two-state" : cfg.preset;
        rep.inputs["preset"] = preset;
        if (preset == "two-state") {
            states = {DensityOperator::pure(Ket::basis(2, 0)), DensityOperator::pure(Ket::plus())};
            priors = {0.5, 0.5};
        } else if (preset == "orthogonal-pair") {
            states = {DensityOperator::pure(Ket::plus()), DensityOperator::pure(Ket::minus())};
            priors = {cfg.t, 1.0 - cfg.t};
            rep.inputs["t"] = cfg.t;
        } else if (preset == "qutrit-orthogonal") {
            for (Index i = 0; i < 3; ++i) states.push_back(DensityOperator::pure(Ket::basis(3, i)));
            priors = {0.2, 0.3, 0.5};
        } else {
            throw DomainError("unknown discriminate preset '" + preset +
                              "' (two-state, orthogonal-pair, qutrit-orthogonal)");
        }
    }
    const problems::DiscriminationInstance inst(ProbabilityDistribution(priors), states);
    if (!cfg.export_sdpa.empty()) sdp::export_sdpa(problems::discrimination_problem(inst), cfg.export_sdpa);
    const auto res = problems::discriminate_sdp(inst, solver_options(cfg));
    ComplexMatrix sum = ComplexMatrix::Zero(inst.dim(), inst.dim());
    double min_eig = 1.0;
    for (const auto& e : res.povm.effects()) {
        sum += e.matrix();
        min_eig = std::min(min_eig, min_eigenvalue(e.matrix()));
    }
    Row row;
    row["n"] = inst.size();
    row["d"] = inst.dim();
    row["p_star"] = r12(res.p_star);
    row["born_value"] = r12(res.born_value);
    row["povm_completeness_residual"] = r12(max_abs(sum - identity(inst.dim())));
    row["povm_min_eigenvalue"] = r12(min_eig);
    if (inst.size() == 2)
        row["helstrom"] = r12(problems::helstrom_bound(priors[0], states[0], priors[1], states[1]));
    add_solver_stats(row, res.solution);
    rep.rows.push_back(row);
    return rep;
}

Report cmd_fidelity(const Config& cfg) {
    using namespace qsdp;
    Report rep{"fidelity"};
    std::optional<DensityOperator> rho, sigma;
    if (!cfg.input.empty()) {
        const auto j = json_io::load_file(cfg.input);
        rho = density_from_json(j, "rho");
        sigma = density_from_json(j, "sigma");
        rep.inputs["input"] = cfg.input;
    } else {
        const std::string preset = cfg.preset.empty() ? "pure-pair" : cfg.preset;
        rep.inputs["preset"] = preset;
        if (preset == "pure-pair") {
            rho = DensityOperator::pure(Ket::basis(2, 0));
            sigma = DensityOperator::pure(Ket::plus());
        } else if (preset == "maximally-mixed") {
            rho = DensityOperator::maximally_mixed(2);
            sigma = DensityOperator::maximally_mixed(2);
        } else if (preset == "bhattacharyya") {
            ComplexMatrix a = ComplexMatrix::Zero(3, 3), b = ComplexMatrix::Zero(3, 3);
            a.diagonal() << 0.5, 0.3, 0.2;
            b.diagonal() << 0.1, 0.6, 0.3;
            rho = DensityOperator(a);
            sigma = DensityOperator(b);
        } else if (preset == "random") {
            Rng rng(cfg.seed);
            rho = random_density(cfg.d, rng);
            sigma = random_density(cfg.d, rng);
            rep.inputs["seed"] = cfg.seed;
            rep.inputs["d"] = cfg.d;
        } else {
            throw DomainError("unknown fidelity preset '" + preset +
                              "' (pure-pair, maximally-mixed, bhattacharyya, random)");
        }
    }
    const auto opt = solver_options(cfg);
    if (!cfg.export_sdpa.empty())
        sdp::export_sdpa(problems::fidelity_problem(*rho, *sigma, problems::Side::primal), cfg.export_sdpa);
    Row row;
    row["closed_form"] = r12(problems::fidelity_closed(*rho, *sigma).value);
    const auto pr = problems::fidelity_sdp(*rho, *sigma, problems::Side::primal, opt);
    const auto du = problems::fidelity_sdp(*rho, *sigma, problems::Side::dual, opt);
    row["sdp_primal"] = r12(pr.value);
    row["sdp_dual"] = r12(du.value);
    row["iterations_primal"] = pr.iterations;
    row["iterations_dual"] = du.iterations;
    row["status"] = "optimal";
    rep.rows.push_back(row);
    return rep;
}

Row diamond_row(const std::string& preset, const Config& c, const qsdp::sdp::SolverOptions& opt) {
    using namespace qsdp;
    Row row;
    std::optional<KrausChannel> b1, b2;
    double t = c.t;
    if (preset == "depolarizing") {
        b1 = identity_channel(2);
        b2 = depolarizing_qubit(c.lambda);
        row["lambda"] = c.lambda;
    } else if (preset == "qudit") {
        b1 = identity_channel(c.d);
        b2 = depolarizing_qudit(c.d, c.lambda);
        row["d"] = c.d;
        row["lambda"] = c.lambda;
    } else if (preset == "werner-holevo") {
        b1 = werner_holevo_1(c.d);
        b2 = werner_holevo_2(c.d);
        row["d"] = c.d;
    } else if (preset == "channel") {
        const auto ch = named_channel(c.channel.empty() ? "identity" : c.channel, c);
        const Superoperator s = to_superoperator(ch);
        row["channel"] = c.channel.empty() ? "identity" : c.channel;
        const auto pr = problems::diamond_norm_sdp(s, problems::Side::primal, opt);
        const auto du = problems::diamond_norm_sdp(s, problems::Side::dual, opt);
        row["diamond_primal"] = r12(pr.value);
        row["diamond_dual"] = r12(du.value);
        add_solver_stats(row, pr.solution);
        return row;
    } else {
        throw DomainError("unknown diamond preset '" + preset + "' (depolarizing, qudit, werner-holevo, channel)");
    }
    row["t"] = t;
    const Superoperator dmap = superop_difference(t, *b1, *b2);
    const double one = problems::superop_one_norm(dmap, c.seed).value;
    const auto pr = problems::diamond_norm_sdp(dmap, problems::Side::primal, opt);
    const auto du = problems::diamond_norm_sdp(dmap, problems::Side::dual, opt);
    row["one_norm"] = r12(one);
    row["diamond_primal"] = r12(pr.value);
    row["diamond_dual"] = r12(du.value);
    row["q_star"] = r12(0.5 * (1.0 + one));
    row["s_star"] = r12(0.5 * (1.0 + pr.value));
    add_solver_stats(row, pr.solution);
    return row;
}

Report cmd_diamond(const Config& cfg) {
    using namespace qsdp;
    Report rep{"diamond"};
    const std::string preset = cfg.preset.empty() ? "depolarizing" : cfg.preset;
    rep.inputs["preset"] = preset;
    const auto opt = solver_options(cfg);
    if (!cfg.input.empty()) {
        const auto loaded = json_io::channel_from_json(json_io::load_file(cfg.input));
        rep.inputs["input"] = cfg.input;
        const Superoperator s = to_superoperator(loaded.channel);
        Row row;
        row["completeness_residual"] = r12(loaded.completeness_residual);
        const auto pr = problems::diamond_norm_sdp(s, problems::Side::primal, opt);
        const auto du = problems::diamond_norm_sdp(s, problems::Side::dual, opt);
        row["diamond_primal"] = r12(pr.value);
        row["diamond_dual"] = r12(du.value);
        add_solver_stats(row, pr.solution);
        rep.rows.push_back(row);
        return rep;
    }
    if (cfg.grid.empty()) {
        rep.rows.push_back(diamond_row(preset, cfg, opt));
        return rep;
    }
    for (double v : cfg.grid) {
        Config c = cfg;
        c.lambda = v;
        try {
            rep.rows.push_back(diamond_row(preset, c, opt));
        } catch (const SolverError& e) {
            rep.rows.push_back(Row{{"lambda", v}, {"status", std::string("solver_error: ") + e.what()}});
            rep.failed = true;
        }
    }
    rep.inputs["grid"] = "lambda";
    return rep;
}

Row separability_row(const DensityOperator& rho, const qsdp::SystemDims& dims, const Config& c,
                     const qsdp::sdp::SolverOptions& opt) {
    using namespace qsdp;
    Row row;
    const auto v = problems::symmetric_extension_sdp(rho, dims, c.k, c.ppt, opt);
    row["k"] = v.k;
    row["ppt"] = v.ppt_constraints_used;
    row["mu_star"] = r12(v.mu_star);
    row["entangled"] = v.entangled;
    if (c.k == 1) row["mu_star_eigen"] = r12(problems::ppt_check(rho, dims).mu_star);
    row["iterations"] = v.iterations;
    row["status"] = "optimal";
    return row;
}

Report cmd_separability(const Config& cfg) {
    using namespace qsdp;
    Report rep{"separability"};
    const auto opt = solver_options(cfg);
    rep.inputs["k"] = cfg.k;
    rep.inputs["ppt"] = cfg.ppt;
    if (!cfg.input.empty()) {
        const auto j = json_io::load_file(cfg.input);
        const auto rho = density_from_json(j, "rho");
        if (!j.contains("dims")) throw ParseError(cfg.input + ": missing field \"dims\"");
        const SystemDims dims(j.at("dims").get<std::vector<Index>>());
        rep.inputs["input"] = cfg.input;
        rep.rows.push_back(separability_row(rho, dims, cfg, opt));
        return rep;
    }
    const std::string preset = cfg.preset.empty() ? "horodecki" : cfg.preset;
    rep.inputs["preset"] = preset;
    if (preset == "bell") {
        rep.rows.push_back(separability_row(DensityOperator::pure(Ket::max_entangled(2)), {2, 2}, cfg, opt));
    } else if (preset == "product") {
        const auto a = DensityOperator::pure(Ket::plus()), b = DensityOperator::maximally_mixed(2);
        rep.rows.push_back(separability_row(DensityOperator(kron(a.matrix(), b.matrix())), {2, 2}, cfg, opt));
    } else if (preset == "horodecki") {
        const std::vector<double> alphas = cfg.grid.empty() ? std::vector<double>{cfg.alpha} : cfg.grid;
        for (double a : alphas) {
            Row row{{"alpha", a}};
            try {
                row.update(separability_row(problems::horodecki_state(a), {3, 3}, cfg, opt));
                if (cfg.k == 1) row["mu_star_formula"] = r12(problems::horodecki_ppt_mu(a));
            } catch (const SolverError& e) {
                row["status"] = std::string("solver_error: ") + e.what();
                rep.failed = true;
            }
            rep.rows.push_back(row);
        }
    } else {
        throw DomainError("unknown separability preset '" + preset + "' (bell, product, horodecki)");
    }
    return rep;
}

Row capacity_row(const std::string& name, double param, const Config& cfg, const qsdp::sdp::SolverOptions& opt) {
    using namespace qsdp;
    Config c = cfg;
    double q1 = 0.0;
    std::optional<KrausChannel> ch;
    Row row{{"channel", name}};
    if (name == "dephasing") {
        c.q = param;
        ch = dephasing(param);
        q1 = problems::coherent_information(*ch, DensityOperator::maximally_mixed(2));
        row["q"] = param;
    } else if (name == "erasure") {
        c.p = param;
        ch = erasure(c.d, param);
        q1 = problems::coherent_information(*ch, DensityOperator::maximally_mixed(c.d));
        row["p"] = param;
        row["d_a"] = c.d;
    } else if (name == "depolarizing") {
        ch = depolarizing_qubit_p(param);
        q1 = problems::depolarizing_q1(param);
        row["p"] = param;
    } else {
        throw DomainError("unknown capacity channel '" + name + "' (dephasing, erasure, depolarizing)");
    }
    if (!cfg.export_sdpa.empty()) sdp::export_sdpa(problems::epsilon_degradable_problem(*ch), cfg.export_sdpa);
    const auto eps = problems::epsilon_degradable_sdp(*ch, opt);
    const auto b = problems::capacity_bounds(q1, eps.epsilon, static_cast<Index>(ch->kraus().size()));
    row["q1"] = r12(b.q1);
    row["epsilon"] = r12(b.epsilon);
    row["lower"] = r12(b.lower);
    row["upper"] = r12(b.upper);
    row["d_c"] = b.d_c;
    add_solver_stats(row, eps.solution);
    return row;
}

Report cmd_capacity(const Config& cfg) {
    using namespace qsdp;
    Report rep{"capacity"};
    const std::string name = cfg.channel.empty() ? "dephasing" : cfg.channel;
    rep.inputs["channel"] = name;
    const auto opt = solver_options(cfg);
    const double single = name == "dephasing" ? cfg.q : cfg.p;
    const std::vector<double> params = cfg.grid.empty() ? std::vector<double>{single} : cfg.grid;
    for (double v : params) {
        try {
            rep.rows.push_back(capacity_row(name, v, cfg, opt));
        } catch (const SolverError& e) {
            rep.rows.push_back(Row{{"channel", name}, {name == "dephasing" ? "q" : "p", v},
                                   {"status", std::string("solver_error: ") + e.what()}});
            rep.failed = true;
        }
    }
    return rep;
}

Report cmd_solve(const Config& cfg) {
    using namespace qsdp;
    Report rep{"solve"};
    rep.inputs["file"] = cfg.sdpa_path;
    const auto prob = sdp::read_sdpa_file(cfg.sdpa_path);
    const auto st = sdp::solve_standard(prob.form, solver_options(cfg));
    Row row;
    // SDPA objective is -b^T y for the dual iterate and -<C, X> for the primal one.
    row["primal"] = r12(prob.scale * -st.dual_obj + prob.offset);
    row["dual"] = r12(prob.scale * -st.primal_obj + prob.offset);
    row["gap"] = r12(std::abs(st.primal_obj - st.dual_obj) * std::abs(prob.scale));
    row["status"] = sdp::to_string(st.status);
    row["iterations"] = st.iterations;
    row["constraints"] = prob.form.num_constraints();
    row["blocks"] = prob.form.num_blocks();
    rep.failed = st.status != sdp::Status::optimal;
    rep.rows.push_back(row);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsdp: semidefinite programs for quantum information"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qsdp::version));
    Config cfg;

    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "Write the report to this file instead of stdout");
    app.add_option("--tol", cfg.tol, "Gap and feasibility tolerance (default 1e-8, env QSDP_TOL)");
    app.add_option("--max-iter", cfg.max_iter, "Interior-point iteration limit")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for randomized presets and restarts");
    app.add_flag("--verbose", cfg.verbose, "Print the solver log to stderr");
    app.add_flag("--timing", cfg.timing, "Include wall time in JSON reports");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--preset", cfg.preset, "Named instance");
        sub->add_option("--input", cfg.input, "JSON instance file");
        sub->add_option("--grid", cfg.grid, "Sweep over these parameter values")->delimiter(',');
        sub->add_option("--export-sdpa", cfg.export_sdpa, "Also write the SDP in SDPA sparse format");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
        sub->add_option("--tol", cfg.tol, "Gap and feasibility tolerance");
        sub->add_option("--max-iter", cfg.max_iter, "Interior-point iteration limit")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Seed for randomized presets and restarts");
        sub->add_flag("--verbose", cfg.verbose, "Print the solver log to stderr");
        sub->add_flag("--timing", cfg.timing, "Include wall time in JSON reports");
    };

    auto* disc = app.add_subcommand("discriminate", "Optimal state discrimination");
    common(disc);
    disc->add_option("--t", cfg.t, "Prior of the first state (orthogonal-pair)");

    auto* fid = app.add_subcommand("fidelity", "Fidelity by closed form and both SDPs");
    common(fid);
    fid->add_option("--d", cfg.d, "Dimension (random preset)")->check(CLI::Range(1, 16));

    auto* dia = app.add_subcommand("diamond", "Channel discrimination and diamond norms");
    common(dia);
    dia->add_option("--lambda", cfg.lambda, "Depolarizing parameter");
    dia->add_option("--t", cfg.t, "Prior of the first channel");
    dia->add_option("--d", cfg.d, "Dimension")->check(CLI::Range(1, 8));
    dia->add_option("--channel", cfg.channel, "Named channel (preset channel)");
    dia->add_option("--p", cfg.p, "Erasure/depolarizing probability");
    dia->add_option("--q", cfg.q, "Dephasing probability");

    auto* sep = app.add_subcommand("separability", "PPT and symmetric-extension entanglement tests");
    common(sep);
    sep->add_option("--alpha", cfg.alpha, "Horodecki parameter");
    sep->add_option("--k", cfg.k, "Extension level")->check(CLI::Range(1, 4));
    sep->add_flag("--ppt,!--no-ppt", cfg.ppt, "Include partial-transpose constraints");

    auto* cap = app.add_subcommand("capacity", "Approximate degradability and capacity bounds");
    common(cap);
    cap->add_option("--channel", cfg.channel, "dephasing, erasure or depolarizing");
    cap->add_option("--p", cfg.p, "Erasure or depolarizing probability");
    cap->add_option("--q", cfg.q, "Dephasing probability");
    cap->add_option("--d", cfg.d, "Erasure input dimension")->check(CLI::Range(1, 8));

    auto* sol = app.add_subcommand("solve", "Solve an SDPA sparse file");
    sol->add_option("file", cfg.sdpa_path, "Path to a .dat-s file")->required();
    sol->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sol->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
    sol->add_option("--tol", cfg.tol, "Gap and feasibility tolerance");
    sol->add_option("--max-iter", cfg.max_iter, "Interior-point iteration limit")->check(CLI::PositiveNumber);
    sol->add_flag("--verbose", cfg.verbose, "Print the solver log to stderr");
    sol->add_flag("--timing", cfg.timing, "Include wall time in JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::usage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const Report rep = *disc ? cmd_discriminate(cfg)
                           : *fid ? cmd_fidelity(cfg)
                           : *dia ? cmd_diamond(cfg)
                           : *sep ? cmd_separability(cfg)
                           : *cap ? cmd_capacity(cfg)
                                  : cmd_solve(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(rep, cfg, secs);
        return rep.failed ? Exit::solver : Exit::ok;
    } catch (const qsdp::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return Exit::solver;
    } catch (const qsdp::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return Exit::io;
    } catch (const qsdp::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n"
                  << "hint: matrices are {\"rows\", \"cols\", \"re\", \"im\"} (row-major), channels are "
                     "{\"dim_in\", \"dim_out\", \"kraus\": [matrix, ...]}\n";
        return Exit::usage;
    } catch (const qsdp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return Exit::usage;
    }
}

// Copyright 2026 The ChiralWalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/estimator.hpp"
#include "chiralwalk/figures.hpp"
#include "chiralwalk/io.hpp"
#include "chiralwalk/lindblad.hpp"
#include "chiralwalk/unitary.hpp"

namespace cw = chiralwalk;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;

struct GraphSource {
    cw::HermitianGraph graph;
    std::optional<cw::BranchDecomposition> decomposition;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& token, const std::string& field) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw cw::ParseError(field + ": bad integer '" + token + "'");
    }
}

double parse_real(const std::string& token, const std::string& field) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw cw::ParseError(field + ": bad number '" + token + "'");
    }
}

// Accepts plain radians ("1.5708") or pi fractions ("pi", "-pi/2", "3pi/4").
double parse_phase_value(const std::string& token, const std::string& field) {
    const std::size_t pos = token.find("pi");
    if (pos == std::string::npos) return parse_real(token, field);

    const std::string head = token.substr(0, pos);
    const std::string tail = token.substr(pos + 2);

    double coefficient = 1.0;
    if (head == "-") {
        coefficient = -1.0;
    } else if (!head.empty() && head != "+") {
        coefficient = parse_real(head, field);
    }
    double denominator = 1.0;
    if (!tail.empty()) {
        if (tail[0] != '/') throw cw::ParseError(field + ": bad phase '" + token + "'");
        denominator = static_cast<double>(parse_int(tail.substr(1), field));
        if (denominator == 0.0) throw cw::ParseError(field + ": zero denominator");
    }
    return coefficient * std::numbers::pi / denominator;
}

std::pair<int, int> parse_family_params(const std::string& text, const std::string& field) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 2) {
        throw cw::ParseError(field + ": expected b,n after the family name");
    }
    return {parse_int(parts[0], field), parse_int(parts[1], field)};
}

GraphSource load_graph(const std::string& spec) {
    const std::string field = "--graph";
    if (spec.rfind("type1:", 0) == 0) {
        const auto [b, n] = parse_family_params(spec.substr(6), field);
        auto [graph, decomposition] = cw::merged_star_type1({b, n});
        return {std::move(graph), std::move(decomposition)};
    }
    if (spec.rfind("type2:", 0) == 0) {
        const auto [b, n] = parse_family_params(spec.substr(6), field);
        auto [graph, decomposition] = cw::merged_star_type2({b, n});
        return {std::move(graph), std::move(decomposition)};
    }
    if (spec.rfind("path:", 0) == 0) {
        return {cw::path_graph(parse_int(spec.substr(5), field)), std::nullopt};
    }
    if (spec.rfind("cycle:", 0) == 0) {
        auto [graph, decomposition] = cw::cycle_graph(parse_int(spec.substr(6), field));
        return {std::move(graph), std::move(decomposition)};
    }
    return {cw::graph_from_json(cw::read_file(spec)), std::nullopt};
}

cw::ChiralPhaseAssignment load_phases(const std::string& spec, const GraphSource& source) {
    const std::string field = "--phases";
    if (spec == "plan") {
        if (!source.decomposition) {
            throw cw::InvalidParamsError(
                field + ": 'plan' needs a graph family with a branch decomposition");
        }
        return cw::plan_zero_transfer(*source.decomposition);
    }
    if (spec.find(':') != std::string::npos) {
        std::vector<cw::PhasedEdge> entries;
        for (const std::string& item : split(spec, ';')) {
            if (item.empty()) continue;
            const std::size_t colon = item.find(':');
            if (colon == std::string::npos) {
                throw cw::ParseError(field + ": entry '" + item + "' lacks i,j:value form");
            }
            const std::vector<std::string> pair = split(item.substr(0, colon), ',');
            if (pair.size() != 2) {
                throw cw::ParseError(field + ": entry '" + item + "' lacks i,j:value form");
            }
            entries.push_back({parse_int(pair[0], field), parse_int(pair[1], field),
                               parse_phase_value(item.substr(colon + 1), field)});
        }
        return cw::ChiralPhaseAssignment(entries);
    }
    return cw::phases_from_json(cw::read_file(spec));
}

cw::StateVector load_state(const std::string& spec, int dimension) {
    const std::string field = "--init";
    if (spec.rfind("basis:", 0) == 0) {
        return cw::StateVector::basis(dimension, parse_int(spec.substr(6), field));
    }
    if (spec.rfind("uniform:", 0) == 0) {
        std::vector<int> vertices;
        for (const std::string& token : split(spec.substr(8), ',')) {
            vertices.push_back(parse_int(token, field));
        }
        return cw::StateVector::uniform_over(dimension, vertices);
    }
    cw::StateVector state = cw::state_from_json(cw::read_file(spec));
    if (state.size() != dimension) {
        throw cw::DimensionMismatchError(field + ": state has " + std::to_string(state.size()) +
                                         " amplitudes for a " + std::to_string(dimension) +
                                         "-vertex graph");
    }
    return state;
}

cw::RealVector load_time_grid(const std::string& spec) {
    const std::string field = "--t";
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() != 3) throw cw::ParseError(field + ": expected start:stop:step");
    const double start = parse_real(parts[0], field);
    const double stop = parse_real(parts[1], field);
    const double step = parse_real(parts[2], field);
    if (!(start < stop)) throw cw::ParseError(field + ": start must be below stop");
    if (!(step > 0.0)) throw cw::ParseError(field + ": step must be positive");
    return cw::time_grid(start, stop, step);
}

std::vector<cw::LindbladKind> load_kinds(const std::string& spec) {
    std::vector<cw::LindbladKind> kinds;
    for (const std::string& name : split(spec, ',')) {
        if (!name.empty()) kinds.push_back(cw::lindblad_kind_from_name(name));
    }
    if (kinds.empty()) throw cw::ParseError("--lindblad: no operator kinds given");
    return kinds;
}

std::filesystem::path default_outdir() {
    if (const char* env = std::getenv("CHIRALWALK_OUTDIR")) return env;
    return ".";
}

std::filesystem::path resolve_output(const std::string& out) {
    const std::filesystem::path path(out);
    if (path.is_absolute()) return path;
    return default_outdir() / path;
}

struct WalkArgs {
    std::string graph;
    std::string phases;
    std::string init;
    std::string times;
    std::string out = "walk.csv";
};

struct QswArgs {
    WalkArgs walk;
    double omega = 0.0;
    std::string kinds = "scattering,dephasing,dissipation";
    std::string method = "auto";
    std::string dump_states;
};

struct ZeroCheckArgs {
    std::string graph;
    std::string phases;
};

struct PlanArgs {
    std::string graph;
    std::string out = "phases.json";
};

struct EstimateArgs {
    long long hits = -1;
    long long trials = -1;
    std::string samples;
    double simulate_omega = -1.0;
    std::uint64_t seed = 12345;
    std::string table;
    std::string table_out;
    double t_star = cw::kDefaultMeasureTime;
    std::string kinds = "scattering";
    double confidence = 0.95;
    std::string out;
};

struct FiguresArgs {
    std::string outdir;
};

struct VerifyArgs {
    std::vector<std::string> files;
};

int run_walk(const WalkArgs& args) {
    const GraphSource source = load_graph(args.graph);
    cw::HermitianGraph hamiltonian =
        args.phases.empty() ? source.graph
                            : cw::apply_phases(source.graph, load_phases(args.phases, source));
    const cw::StateVector initial = load_state(args.init, hamiltonian.vertex_count());
    const cw::RealVector times = load_time_grid(args.times);

    const cw::SpectralPropagator propagator(hamiltonian);
    const cw::ProbabilityTrace trace = cw::trace_probabilities(propagator, initial, times);
    const std::filesystem::path path = resolve_output(args.out);
    cw::atomic_write(path, cw::trace_to_csv(trace));
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int run_qsw(const QswArgs& args) {
    const GraphSource source = load_graph(args.walk.graph);
    cw::HermitianGraph hamiltonian =
        args.walk.phases.empty()
            ? source.graph
            : cw::apply_phases(source.graph, load_phases(args.walk.phases, source));
    const cw::StateVector initial = load_state(args.walk.init, hamiltonian.vertex_count());
    const cw::RealVector times = load_time_grid(args.walk.times);

    cw::LindbladSet set(cw::standard_lindblads(hamiltonian, load_kinds(args.kinds)), args.omega);

    cw::QswOptions options;
    options.keep_states = !args.dump_states.empty();
    if (args.method == "auto") {
        options.method = cw::QswMethod::Auto;
    } else if (args.method == "exp") {
        options.method = cw::QswMethod::SuperoperatorExp;
    } else if (args.method == "rk") {
        options.method = cw::QswMethod::AdaptiveRk;
    } else {
        throw cw::ParseError("--method: expected auto, exp, or rk");
    }

    const cw::QswResult result =
        cw::qsw_evolve(hamiltonian, set, cw::DensityMatrix::pure(initial), times, options);
    const std::filesystem::path path = resolve_output(args.walk.out);
    cw::atomic_write(path, cw::trace_to_csv(result.trace));
    std::cout << "wrote " << path.string() << "\n";
    if (!args.dump_states.empty()) {
        const std::filesystem::path dump = resolve_output(args.dump_states);
        cw::atomic_write(dump, cw::snapshots_to_json(times, result.states));
        std::cout << "wrote " << dump.string() << "\n";
    }
    return 0;
}

int run_zero_check(const ZeroCheckArgs& args) {
    const GraphSource source = load_graph(args.graph);
    if (!source.decomposition) {
        throw cw::InvalidParamsError(
            "--graph: zero-check needs a graph family with a branch decomposition");
    }
    const cw::ChiralPhaseAssignment phases = load_phases(args.phases, source);
    const cw::BranchPhaseSums sums = cw::branch_phase_sums(*source.decomposition, phases);
    const double residual = cw::zero_transfer_residual(sums);
    std::cout << "residual " << cw::format_double(residual) << "\n";
    return residual < 1e-12 ? 0 : 1;
}

int run_plan(const PlanArgs& args) {
    const GraphSource source = load_graph(args.graph);
    if (!source.decomposition) {
        throw cw::InvalidParamsError(
            "--graph: planning needs a graph family with a branch decomposition");
    }
    const cw::ChiralPhaseAssignment phases = cw::plan_zero_transfer(*source.decomposition);
    const std::filesystem::path path = resolve_output(args.out);
    cw::atomic_write(path, cw::phases_to_json(phases));
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int run_estimate(const EstimateArgs& args) {
    cw::ReferenceTable table;
    if (!args.table.empty()) {
        table = cw::reference_from_csv(cw::read_file(args.table));
        const auto [probe, initial] = cw::build_probe();
        if (table.probe_fingerprint != cw::graph_fingerprint(probe)) {
            throw cw::InvalidParamsError("--table: file was built for a different probe graph");
        }
    } else {
        table = cw::build_reference(cw::default_omega_grid(), args.t_star,
                                    load_kinds(args.kinds));
    }
    if (!args.table_out.empty()) {
        const std::filesystem::path path = resolve_output(args.table_out);
        cw::atomic_write(path, cw::reference_to_csv(table));
        std::cout << "wrote " << path.string() << "\n";
    }

    long long hits = args.hits;
    long long trials = args.trials;
    bool simulated = false;

    const int sources = (args.hits >= 0 ? 1 : 0) + (args.samples.empty() ? 0 : 1) +
                        (args.simulate_omega >= 0.0 ? 1 : 0);
    if (sources != 1) {
        throw cw::ParseError(
            "give exactly one of --hits/--trials, --samples, or --simulate");
    }

    if (!args.samples.empty()) {
        hits = 0;
        trials = 0;
        for (const std::string& raw : split(cw::read_file(args.samples), '\n')) {
            std::string line = raw;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (line == "1") {
                ++hits;
            } else if (line != "0") {
                throw cw::ParseError("--samples: line '" + line + "' is not 0 or 1");
            }
            ++trials;
        }
    } else if (args.simulate_omega >= 0.0) {
        if (trials < 0) trials = 100000;
        const double p = cw::probe_transfer_probability(table, args.simulate_omega);
        hits = cw::sample_transfer_hits(p, trials, args.seed);
        simulated = true;
    } else if (trials < 0) {
        throw cw::ParseError("--hits needs --trials");
    }

    const cw::OmegaEstimate estimate =
        cw::estimate_omega(table, hits, trials, args.confidence);

    std::cout << "omega_hat " << cw::format_double(estimate.omega_hat) << "\n";
    std::cout << "ci_low " << cw::format_double(estimate.low) << "\n";
    std::cout << "ci_high " << cw::format_double(estimate.high) << "\n";
    std::cout << "hits " << hits << "\n";
    std::cout << "trials " << estimate.sample_size << "\n";
    std::cout << "confidence " << cw::format_double(args.confidence) << "\n";
    std::cout << "clamped " << (estimate.clamped ? "true" : "false") << "\n";
    if (simulated) std::cout << "seed " << args.seed << "\n";

    if (!args.out.empty()) {
        std::string json = "{\n";
        json += "  \"omega_hat\": " + cw::format_double(estimate.omega_hat) + ",\n";
        json += "  \"ci_low\": " + cw::format_double(estimate.low) + ",\n";
        json += "  \"ci_high\": " + cw::format_double(estimate.high) + ",\n";
        json += "  \"hits\": " + std::to_string(hits) + ",\n";
        json += "  \"trials\": " + std::to_string(estimate.sample_size) + ",\n";
        json += "  \"confidence\": " + cw::format_double(args.confidence) + ",\n";
        json += "  \"clamped\": " + std::string(estimate.clamped ? "true" : "false");
        if (simulated) json += ",\n  \"seed\": " + std::to_string(args.seed);
        json += "\n}\n";
        const std::filesystem::path path = resolve_output(args.out);
        cw::atomic_write(path, json);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int run_figures(const FiguresArgs& args) {
    const std::filesystem::path outdir =
        args.outdir.empty() ? default_outdir() : std::filesystem::path(args.outdir);
    for (const std::filesystem::path& path : cw::write_all_figures(outdir)) {
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int run_verify(const VerifyArgs& args) {
    bool all_passed = true;
    for (const std::string& file : args.files) {
        const cw::VerifyReport report = cw::verify_figure_file(file);
        if (report.passed) {
            std::cout << file << ": ok\n";
        } else {
            all_passed = false;
            std::cout << file << ": FAILED\n";
            for (const std::string& failure : report.failures) {
                std::cout << "  " << failure << "\n";
            }
        }
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chiral quantum walks on complex-weighted graphs"};
    app.require_subcommand(1);
    app.set_config("--config");

    WalkArgs walk_args;
    CLI::App* walk = app.add_subcommand("walk", "Closed-system probability trace");
    walk->add_option("--graph", walk_args.graph,
                     "type1:b,n | type2:b,n | path:n | cycle:n | file")
        ->required();
    walk->add_option("--phases", walk_args.phases, "plan | i,j:value;... | file");
    walk->add_option("--init", walk_args.init, "basis:k | uniform:v1,v2,... | file")
        ->required();
    walk->add_option("--t", walk_args.times, "time grid start:stop:step")->required();
    walk->add_option("--out", walk_args.out, "output CSV path");

    QswArgs qsw_args;
    CLI::App* qsw = app.add_subcommand("qsw", "Open-system probability trace");
    qsw->add_option("--graph", qsw_args.walk.graph,
                    "type1:b,n | type2:b,n | path:n | cycle:n | file")
        ->required();
    qsw->add_option("--phases", qsw_args.walk.phases, "plan | i,j:value;... | file");
    qsw->add_option("--init", qsw_args.walk.init, "basis:k | uniform:v1,v2,... | file")
        ->required();
    qsw->add_option("--t", qsw_args.walk.times, "time grid start:stop:step")->required();
    qsw->add_option("--out", qsw_args.walk.out, "output CSV path")
        ->default_val("qsw.csv");
    qsw->add_option("--omega", qsw_args.omega, "coherent/dissipative mixing weight in [0,1]")
        ->required();
    qsw->add_option("--lindblad", qsw_args.kinds,
                    "comma list of scattering,dephasing,dissipation");
    qsw->add_option("--method", qsw_args.method, "auto | exp | rk");
    qsw->add_option("--dump-states", qsw_args.dump_states,
                    "also write density-matrix snapshots to this path");

    ZeroCheckArgs zero_args;
    CLI::App* zero = app.add_subcommand("zero-check", "Print the branch-sum residual");
    zero->add_option("--graph", zero_args.graph, "type1:b,n | type2:b,n | cycle:n")->required();
    zero->add_option("--phases", zero_args.phases, "plan | i,j:value;... | file")->required();

    PlanArgs plan_args;
    CLI::App* plan = app.add_subcommand("plan", "Write phases satisfying the zero-transfer condition");
    plan->add_option("--graph", plan_args.graph, "type1:b,n | type2:b,n | cycle:n")->required();
    plan->add_option("--out", plan_args.out, "output phase file");

    EstimateArgs est_args;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate omega from probe measurements");
    estimate->add_option("--hits", est_args.hits, "observed hits at the probe's middle vertex");
    estimate->add_option("--trials", est_args.trials, "number of measurements");
    estimate->add_option("--samples", est_args.samples, "file of 0/1 outcomes, one per line");
    estimate->add_option("--simulate", est_args.simulate_omega,
                         "draw synthetic samples at this omega");
    estimate->add_option("--seed", est_args.seed, "seed for --simulate");
    estimate->add_option("--table", est_args.table, "reference table CSV to reuse");
    estimate->add_option("--table-out", est_args.table_out, "write the reference table used");
    estimate->add_option("--t-star", est_args.t_star, "measurement time for a fresh table");
    estimate->add_option("--kinds", est_args.kinds, "operator kinds for a fresh table");
    estimate->add_option("--confidence", est_args.confidence, "confidence level in (0,1)");
    estimate->add_option("--out", est_args.out, "also write the estimate as JSON");

    FiguresArgs fig_args;
    CLI::App* figures = app.add_subcommand("figures", "Emit all figure CSV files");
    figures->add_option("--outdir", fig_args.outdir, "output directory");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Re-validate emitted figure files");
    verify->add_option("files", verify_args.files, "files to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (walk->parsed()) return run_walk(walk_args);
        if (qsw->parsed()) return run_qsw(qsw_args);
        if (zero->parsed()) return run_zero_check(zero_args);
        if (plan->parsed()) return run_plan(plan_args);
        if (estimate->parsed()) return run_estimate(est_args);
        if (figures->parsed()) return run_figures(fig_args);
        if (verify->parsed()) return run_verify(verify_args);
    } catch (const cw::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const cw::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const cw::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}

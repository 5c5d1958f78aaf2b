// qisflow: run the Karmarkar gradient flow on density matrices, solve
// canonical LPs with it, and check the geometric identities numerically.
//
// Exit codes: 0 success, 1 parse/validation/usage error, 2 numeric failure,
// 3 verification failure.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qisflow/io.hpp"
#include "qisflow/lp.hpp"
#include "qisflow/verify.hpp"

namespace {

using namespace qisflow;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerify = 3;

struct RunOptions {
    std::string problem;
    std::string output = "-";
    std::string format = "csv";
    bool simplex = false;
    bool no_shift = false;
    std::optional<double> step, t_max, grad_tol, boundary_floor;
    std::optional<int> record_every;
    std::optional<std::uint64_t> seed;
};

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("QISFLOW_SEED");
    if (s == nullptr || *s == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("QISFLOW_SEED is not a non-negative integer: '") + s + "'");
}

void add_run_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("problem", o.problem, "Problem file (JSON)")->required();
    cmd->add_option("-o,--output", o.output, "Trajectory output path, '-' for stdout");
    cmd->add_option("--format", o.format, "Trajectory format")->check(CLI::IsMember({"csv", "structured"}));
    cmd->add_option("--step", o.step, "RK4 step size");
    cmd->add_option("--t-max", o.t_max, "Integration horizon");
    cmd->add_option("--grad-tol", o.grad_tol, "Stationarity tolerance on the gradient norm");
    cmd->add_option("--boundary-floor", o.boundary_floor, "Minimum eigenvalue guard");
    cmd->add_option("--record-every", o.record_every, "Record every N steps");
    cmd->add_option("--seed", o.seed, "Seed for a random initial state");
}

struct Prepared {
    ProblemFile problem;
    CostSpec cost;
    DensityState start;
};

Prepared prepare(const RunOptions& o) {
    ProblemFile p = load_problem(o.problem);
    if (o.step) p.params.step = *o.step;
    if (o.t_max) p.params.t_max = *o.t_max;
    if (o.grad_tol) p.params.grad_tol = *o.grad_tol;
    if (o.boundary_floor) p.params.boundary_floor = *o.boundary_floor;
    if (o.record_every) p.params.record_every = *o.record_every;
    if (o.seed) p.seed = *o.seed;
    try {
        p.params.validate();
    } catch (const ContractError& e) {
        throw ValidationError(e.what());
    }
    CostSpec cost = p.cost();
    DensityState start = p.initial_state(env_seed());
    return Prepared{std::move(p), std::move(cost), std::move(start)};
}

template <class Write>
void emit(const std::string& path, Write&& write) {
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    write(out);
}

int cmd_solve_lp(const RunOptions& o) {
    const Prepared run = prepare(o);
    LpOptions options;
    options.simplex_flow = o.simplex;
    options.shift_cost = !o.no_shift;
    const LpSolution sol = solve_lp(run.start, run.cost, run.problem.params, options);
    const OutputFormat fmt = o.format == "csv" ? OutputFormat::csv : OutputFormat::structured;
    const std::string summary = lp_summary_json(sol);
    emit(o.output, [&](std::ostream& os) {
        if (const auto* mt = std::get_if<FlowTrajectory>(&sol.trajectory))
            write_matrix_trajectory(os, *mt, fmt, summary);
        else
            write_simplex_trajectory(os, std::get<SimplexTrajectory>(sol.trajectory), fmt, summary);
    });
    (o.output == "-" ? std::cerr : std::cout) << summary << '\n';
    return kExitOk;
}

int cmd_flow(const RunOptions& o) {
    const Prepared run = prepare(o);
    const FlowTrajectory traj = integrate_matrix(run.start, run.cost, run.problem.params);
    const OutputFormat fmt = o.format == "csv" ? OutputFormat::csv : OutputFormat::structured;
    emit(o.output, [&](std::ostream& os) { write_matrix_trajectory(os, traj, fmt); });
    (o.output == "-" ? std::cerr : std::cout)
        << "{\"stop_reason\":\"" << to_string(traj.stop_reason) << "\",\"steps\":" << traj.steps
        << ",\"final_time\":" << traj.times.back() << ",\"final_potential\":" << traj.potential_values.back()
        << "}\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> seed, int count) {
    const std::uint64_t s = seed ? *seed : env_seed().value_or(1);
    const SuiteReport report = run_suite(suite, s, count);
    std::cout << "suite " << report.suite << " seed " << s << " count " << count << '\n';
    for (const CheckResult& c : report.checks) {
        std::cout << (c.passed() ? "PASS " : "FAIL ") << c.identity << ": max error " << c.max_error
                  << " (tolerance " << c.tolerance << ", " << c.cases << " cases)\n";
    }
    return report.passed() ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Karmarkar gradient flow on the quantum information space"};
    app.require_subcommand(1);

    RunOptions solve_opts;
    CLI::App* solve = app.add_subcommand("solve-lp", "Solve min sum c_j x_j over the simplex by following the flow");
    add_run_flags(solve, solve_opts);
    solve->add_flag("--simplex", solve_opts.simplex, "Integrate the classical flow on the simplex");
    solve->add_flag("--no-shift", solve_opts.no_shift, "Run the flow on the raw costs");

    RunOptions flow_opts;
    CLI::App* flow = app.add_subcommand("flow", "Integrate the matrix flow from the problem's initial state");
    add_run_flags(flow, flow_opts);

    std::string suite;
    std::optional<std::uint64_t> verify_seed;
    int count = 100;
    CLI::App* verify = app.add_subcommand("verify", "Check the geometric identities on random cases");
    verify->add_option("suite", suite, "metric | isometry | gradient | lift | all")->required();
    verify->add_option("--seed", verify_seed, "Random seed (falls back to QISFLOW_SEED, then 1)");
    verify->add_option("--count", count, "Number of random cases")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*solve) return cmd_solve_lp(solve_opts);
        if (*flow) return cmd_flow(flow_opts);
        if (*verify) {
            const auto& names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "error: unknown suite '" << suite << "'\n" << verify->help();
                return kExitInput;
            }
            return cmd_verify(suite, verify_seed, count);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitInput;
    } catch (const IntegrationError& e) {
        std::cerr << "numeric failure: " << e.what() << " (last good state at t = " << e.time() << ")\n";
        return kExitNumeric;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const ContractError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitInput;
    } catch (const RegularityError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

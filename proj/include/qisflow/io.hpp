#pragma once

// Problem files (JSON) and trajectory files (CSV or JSON).
//
// Problem file:
//   {
//     "m": 3,
//     "c": [1.0, -2.0, 3.0],
//     "init": "barycenter" | "random"
//           | {"diagonal": [0.2, 0.3, 0.5]}
//           | {"matrix": {"real": [[...], ...], "imag": [[...], ...]}},
//     "params": {"step": 0.01, "t_max": 100, "grad_tol": 1e-9,
//                "boundary_floor": 1e-10, "record_every": 10},
//     "seed": 42
//   }
// "params", "seed" and "init.matrix.imag" are optional. "random" draws the
// initial state from the seed (or the fallback seed supplied by the caller).

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qisflow/errors.hpp"
#include "qisflow/integrator.hpp"
#include "qisflow/lp.hpp"

namespace qisflow {

/// Malformed input text. Carries the 1-based line (0 when unknown) and the
/// offending field path (empty when the document itself is malformed).
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, std::string field)
        : Error(what), line_(line), field_(std::move(field)) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

/// Well-formed input whose values violate a state invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

struct InitSpec {
    enum class Kind { barycenter, diagonal, matrix, random };
    Kind kind = Kind::barycenter;
    RVector diagonal;
    CMatrix matrix;
};

struct ProblemFile {
    Index m = 0;
    RVector c;
    InitSpec init;
    IntegrationParams params;
    std::optional<std::uint64_t> seed;

    CostSpec cost() const;
    /// Builds the initial state. A "random" init uses `seed`, then
    /// `fallback_seed`; without either it is a ValidationError.
    DensityState initial_state(std::optional<std::uint64_t> fallback_seed = std::nullopt) const;
};

ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

enum class OutputFormat { csv, structured };

/// Summary of an LP run, 1-based vertex index as printed.
std::string lp_summary_json(const LpSolution& sol);

void write_matrix_trajectory(std::ostream& os, const FlowTrajectory& traj, OutputFormat format,
                             const std::string& summary_json = {});
void write_simplex_trajectory(std::ostream& os, const SimplexTrajectory& traj, OutputFormat format,
                              const std::string& summary_json = {});

/// A trajectory file read back and revalidated.
struct TrajectoryFile {
    bool matrix = true;
    std::vector<double> times;
    std::vector<std::variant<DensityState, SimplexPoint>> states;
    std::vector<double> potential_values;
};

/// Parses either format; every state is rebuilt through its validating
/// constructor with the given positivity floor.
TrajectoryFile read_trajectory(std::string_view text, double positivity_floor = 0.0);

}  // namespace qisflow

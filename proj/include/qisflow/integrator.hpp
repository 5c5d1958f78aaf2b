#pragma once

// Fixed-step RK4 integration of the matrix gradient flow and of the
// classical Karmarkar flow, with projection back onto the constraint set
// after every step.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qisflow/gradient.hpp"
#include "qisflow/qis_core.hpp"
#include "qisflow/simplex.hpp"

namespace qisflow {

struct IntegrationParams {
    double step = 1e-2;
    double t_max = 100.0;
    double grad_tol = 1e-9;        // metric norm of the gradient at which the run is stationary
    double boundary_floor = 1e-10; // minimum eigenvalue (coordinate) guard
    int record_every = 10;

    /// Throws ContractError unless every field is positive and grad_tol < 1.
    void validate() const;
};

enum class StopReason { stationary, t_max_reached, boundary_reached };

std::string_view to_string(StopReason reason);
std::optional<StopReason> parse_stop_reason(std::string_view text);

struct FlowTrajectory {
    std::vector<double> times;
    std::vector<DensityState> states;
    std::vector<double> potential_values;
    StopReason stop_reason = StopReason::t_max_reached;
    Index nearest_vertex = 0;  // 0-based index of the closest vertex projector at the end
    long steps = 0;

    const DensityState& final_state() const { return states.back(); }
};

struct SimplexTrajectory {
    std::vector<double> times;
    std::vector<SimplexPoint> states;
    std::vector<double> potential_values;
    StopReason stop_reason = StopReason::t_max_reached;
    Index nearest_vertex = 0;
    long steps = 0;

    const SimplexPoint& final_state() const { return states.back(); }
};

/// Raised when a step produces non-finite entries. Carries the last state
/// that was accepted.
class IntegrationError : public NumericError {
public:
    using LastState = std::variant<DensityState, SimplexPoint>;

    IntegrationError(const std::string& what, double time, LastState last)
        : NumericError(what), time_(time), last_(std::move(last)) {}

    double time() const { return time_; }
    const LastState& last_state() const { return last_; }

private:
    double time_;
    LastState last_;
};

FlowTrajectory integrate_matrix(const DensityState& rho0, const CostSpec& c, const IntegrationParams& p);

SimplexTrajectory integrate_simplex(const SimplexPoint& x0, const CostSpec& c, const IntegrationParams& p);

/// sqrt of the SLD Fisher norm of grad K.
double stationarity_norm(const DensityState& rho, const CostSpec& c);

/// sqrt of the simplex-metric norm of grad kappa.
double simplex_stationarity_norm(const SimplexPoint& x, const CostSpec& c);

/// Frobenius norm of the commutator [a, b].
double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace qisflow

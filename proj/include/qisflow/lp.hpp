#pragma once

// Canonical linear program  minimize sum_j c_j x_j  over the simplex,
// solved by following the Karmarkar flow to a vertex.

#include <variant>

#include "qisflow/integrator.hpp"

namespace qisflow {

/// Affine reparametrization c' = (c - offset) * scale used to drive the flow.
struct CostShift {
    double offset = 0.0;
    double scale = 1.0;
};

/// Largest |c'_j| allowed after shifting; keeps fixed-step RK4 well inside
/// its stability region at the default step.
inline constexpr double kShiftedCostBound = 50.0;

/// Because sum_j x_j = 1 on the simplex, c and (c - offset) * scale (scale > 0)
/// define the same linear program. The flow however only reaches a vertex
/// when some cost is negative; for all-positive costs it settles at the
/// interior point x proportional to 1/c. The shift places the offset
/// 90% of the way from the smallest cost to the next distinct value, so
/// exactly the minimal entries become negative, then rescales so the
/// minimum is -1 unless that would push max |c'| past kShiftedCostBound.
/// A constant cost is returned unchanged.
CostShift lp_cost_shift(const CostSpec& c);

CostSpec apply_shift(const CostSpec& c, const CostShift& shift);

struct LpOptions {
    bool simplex_flow = false;  // integrate the classical flow instead of the matrix flow
    bool shift_cost = true;
};

struct LpSolution {
    Index vertex = 0;          // 0-based index of the reached vertex
    double objective = 0.0;    // sum_j c_j x_j at the final state, original costs
    StopReason stop_reason = StopReason::t_max_reached;
    RVector final_point;       // diagonal of the final state
    CostShift shift;
    std::variant<FlowTrajectory, SimplexTrajectory> trajectory;
};

/// Runs the flow from rho0. With simplex_flow the start must be diagonal.
LpSolution solve_lp(const DensityState& rho0, const CostSpec& c, const IntegrationParams& p,
                    const LpOptions& options = {});

/// Brute-force minimum of sum_j c_j x_j over the vertices: argmin_j c_j
/// (first index on ties).
Index best_vertex(const CostSpec& c);

}  // namespace qisflow

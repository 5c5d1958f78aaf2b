#include "qisflow/lp.hpp"

#include <algorithm>
#include <cmath>

namespace qisflow {

CostShift lp_cost_shift(const CostSpec& c) {
    const RVector& v = c.values();
    const double lowest = v.minCoeff();
    double next = INFINITY;
    for (Index j = 0; j < v.size(); ++j)
        if (v(j) > lowest) next = std::min(next, v(j));
    if (!std::isfinite(next)) return CostShift{};

    CostShift shift;
    shift.offset = lowest + 0.9 * (next - lowest);
    const double spread = (v.array() - shift.offset).abs().maxCoeff();
    shift.scale = std::min(1.0 / (shift.offset - lowest), kShiftedCostBound / spread);
    return shift;
}

CostSpec apply_shift(const CostSpec& c, const CostShift& shift) {
    return CostSpec((c.values().array() - shift.offset).matrix() * shift.scale);
}

Index best_vertex(const CostSpec& c) {
    Index j = 0;
    c.values().minCoeff(&j);
    return j;
}

LpSolution solve_lp(const DensityState& rho0, const CostSpec& c, const IntegrationParams& p,
                    const LpOptions& options) {
    if (rho0.dim() != c.dim()) throw ContractError("solve_lp: cost and state dimensions differ");
    LpSolution out;
    out.shift = options.shift_cost ? lp_cost_shift(c) : CostShift{};
    const CostSpec flow_cost = apply_shift(c, out.shift);

    if (options.simplex_flow) {
        if (!is_diagonal(rho0.matrix(), kHermitianTol))
            throw ContractError("solve_lp: the simplex flow needs a diagonal initial state");
        const RVector x0 = rho0.matrix().diagonal().real();
        SimplexTrajectory traj = integrate_simplex(SimplexPoint(x0 / x0.sum()), flow_cost, p);
        out.final_point = traj.final_state().values();
        out.vertex = traj.nearest_vertex;
        out.stop_reason = traj.stop_reason;
        out.trajectory = std::move(traj);
    } else {
        FlowTrajectory traj = integrate_matrix(rho0, flow_cost, p);
        out.final_point = traj.final_state().matrix().diagonal().real();
        out.vertex = traj.nearest_vertex;
        out.stop_reason = traj.stop_reason;
        out.trajectory = std::move(traj);
    }
    out.objective = c.values().dot(out.final_point);
    return out;
}

}  // namespace qisflow

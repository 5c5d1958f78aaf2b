#include "qisflow/integrator.hpp"

#include <cmath>
#include <sstream>

namespace qisflow {

void IntegrationParams::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(step)) throw ContractError("IntegrationParams: step must be positive");
    if (!positive(t_max)) throw ContractError("IntegrationParams: t_max must be positive");
    if (!positive(grad_tol) || !(grad_tol < 1.0))
        throw ContractError("IntegrationParams: grad_tol must lie in (0, 1)");
    if (!positive(boundary_floor)) throw ContractError("IntegrationParams: boundary_floor must be positive");
    if (record_every <= 0) throw ContractError("IntegrationParams: record_every must be positive");
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
        case StopReason::stationary: return "stationary";
        case StopReason::t_max_reached: return "t_max_reached";
        case StopReason::boundary_reached: return "boundary_reached";
    }
    return "unknown";
}

std::optional<StopReason> parse_stop_reason(std::string_view text) {
    for (StopReason r : {StopReason::stationary, StopReason::t_max_reached, StopReason::boundary_reached})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

double stationarity_norm(const DensityState& rho, const CostSpec& c) {
    const TangentState g = grad_K(rho, c);
    return std::sqrt(std::max(0.0, qf_metric(rho, g, g)));
}

double simplex_stationarity_norm(const SimplexPoint& x, const CostSpec& c) {
    const SimplexTangent g = grad_kappa(x, c);
    return std::sqrt(std::max(0.0, simplex_metric(x, g, g)));
}

double commutator_norm(const CMatrix& a, const CMatrix& b) { return (a * b - b * a).norm(); }

namespace {

struct MatrixFlow {
    using Raw = CMatrix;
    using State = DensityState;
    using Trajectory = FlowTrajectory;

    const CostSpec& c;

    Raw raw(const State& s) const { return s.matrix(); }
    Raw field(const Raw& x) const { return karmarkar_matrix_field(x, c); }
    Raw project(const Raw& x) const {
        Raw y = hermitian_part(x);
        return y / y.trace().real();
    }
    bool finite(const Raw& x) const { return x.allFinite(); }
    double lowest(const Raw& x) const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) return NAN;
        return es.eigenvalues().minCoeff();
    }
    State make(const Raw& x) const { return DensityState(x, 0.0); }
    double potential(const State& s) const { return potential_K(s, c); }
    double norm(const State& s) const { return stationarity_norm(s, c); }
    Index nearest_vertex(const Raw& x) const {
        Index j = 0;
        x.diagonal().real().maxCoeff(&j);
        return j;
    }
};

struct VectorFlow {
    using Raw = RVector;
    using State = SimplexPoint;
    using Trajectory = SimplexTrajectory;

    const CostSpec& c;

    Raw raw(const State& s) const { return s.values(); }
    Raw field(const Raw& x) const { return karmarkar_vector_field(x, c); }
    Raw project(const Raw& x) const { return x / x.sum(); }
    bool finite(const Raw& x) const { return x.allFinite(); }
    double lowest(const Raw& x) const { return x.minCoeff(); }
    State make(const Raw& x) const { return SimplexPoint(x); }
    double potential(const State& s) const { return potential_kappa(s, c); }
    double norm(const State& s) const { return simplex_stationarity_norm(s, c); }
    Index nearest_vertex(const Raw& x) const {
        Index j = 0;
        x.maxCoeff(&j);
        return j;
    }
};

template <class Flow>
typename Flow::Trajectory run(const Flow& flow, const typename Flow::State& start, const IntegrationParams& p) {
    using Raw = typename Flow::Raw;
    p.validate();

    typename Flow::Trajectory out;
    auto record = [&](double t, const typename Flow::State& s) {
        out.times.push_back(t);
        out.states.push_back(s);
        out.potential_values.push_back(flow.potential(s));
    };

    Raw x = flow.raw(start);
    record(0.0, start);
    out.nearest_vertex = flow.nearest_vertex(x);
    if (flow.lowest(x) < p.boundary_floor) {
        out.stop_reason = StopReason::boundary_reached;
        return out;
    }
    if (flow.norm(start) < p.grad_tol) {
        out.stop_reason = StopReason::stationary;
        return out;
    }

    const long n_steps = std::max(1L, static_cast<long>(std::ceil(p.t_max / p.step * (1.0 - 1e-12))));
    typename Flow::State last = start;
    bool last_recorded = true;
    double t_prev = 0.0;
    for (long k = 1; k <= n_steps; ++k) {
        const double t = (k == n_steps) ? p.t_max : static_cast<double>(k) * p.step;
        const double h = t - t_prev;

        const Raw k1 = flow.field(x);
        const Raw k2 = flow.field(x + (0.5 * h) * k1);
        const Raw k3 = flow.field(x + (0.5 * h) * k2);
        const Raw k4 = flow.field(x + h * k3);
        Raw next = flow.project(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

        const double low = flow.finite(next) ? flow.lowest(next) : NAN;
        if (!std::isfinite(low)) {
            std::ostringstream os;
            os << "integration produced non-finite entries at t = " << t;
            throw IntegrationError(os.str(), t_prev, last);
        }
        out.steps = k;
        out.nearest_vertex = flow.nearest_vertex(next);
        if (low < p.boundary_floor) {
            // The crossing state is kept only while it is still regular.
            if (low > kDefaultPositivityFloor) {
                record(t, flow.make(next));
            } else if (!last_recorded) {
                record(t_prev, last);
            }
            out.stop_reason = StopReason::boundary_reached;
            return out;
        }

        x = std::move(next);
        last = flow.make(x);
        t_prev = t;
        last_recorded = false;
        if (flow.norm(last) < p.grad_tol) {
            record(t, last);
            out.stop_reason = StopReason::stationary;
            return out;
        }
        if (k % p.record_every == 0 || k == n_steps) {
            record(t, last);
            last_recorded = true;
        }
    }
    out.stop_reason = StopReason::t_max_reached;
    return out;
}

}  // namespace

FlowTrajectory integrate_matrix(const DensityState& rho0, const CostSpec& c, const IntegrationParams& p) {
    if (rho0.dim() != c.dim()) throw ContractError("integrate_matrix: cost and state dimensions differ");
    return run(MatrixFlow{c}, rho0, p);
}

SimplexTrajectory integrate_simplex(const SimplexPoint& x0, const CostSpec& c, const IntegrationParams& p) {
    if (x0.dim() != c.dim()) throw ContractError("integrate_simplex: cost and state dimensions differ");
    return run(VectorFlow{c}, x0, p);
}

}  // namespace qisflow

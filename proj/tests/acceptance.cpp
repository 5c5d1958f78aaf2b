// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: qisflow_acceptance [seed]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qisflow/gradient.hpp"
#include "qisflow/integrator.hpp"
#include "qisflow/lift.hpp"
#include "qisflow/lp.hpp"
#include "qisflow/qis_core.hpp"
#include "qisflow/random.hpp"
#include "qisflow/simplex.hpp"

using namespace qisflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// NaN counts as an arbitrarily large error.
void track(double& worst, double err) { worst = std::isnan(err) ? INFINITY : std::max(worst, err); }

void qf_equals_4r(std::uint64_t seed) {
    Sampler rng(seed);
    const auto start = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Index m = rng.integer(2, 4);
        const DensityState rho = rng.density(m);
        const TangentState a = rng.tangent(m);
        const TangentState b = rng.tangent(m);
        track(worst, oracle::relative(qf_metric(rho, a, b), 4.0 * r_metric(rho, a, b, 2)));
    }
    const double t = seconds_since(start);
    report(1, worst < 1e-9 && t < 5.0, "QF = 4R, 500 cases, m in 2..4, n = 2",
           fmt("max rel error %.3g (< 1e-9), %.3f s (< 5 s)", worst, t));
}

void isometry(std::uint64_t seed) {
    Sampler rng(seed);
    std::vector<SimplexPoint> xs;
    std::vector<SimplexTangent> us, vs;
    for (int i = 0; i < 1000; ++i) {
        const Index m = rng.integer(2, 8);
        xs.push_back(rng.simplex_point(m));
        us.push_back(rng.simplex_tangent(m));
        vs.push_back(rng.simplex_tangent(m));
    }
    const auto start = Clock::now();
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const IsometryPair p = check_isometry(xs[i], us[i], vs[i]);
        track(worst, std::abs(p.embedded - p.simplex));
    }
    const double t = seconds_since(start);
    report(2, worst < 1e-12 && t < 1.0, "embedding is isometric, 1000 cases, m in 2..8",
           fmt("max abs error %.3g (< 1e-12), %.3f s (< 1 s)", worst, t));
}

void gradients(std::uint64_t seed) {
    Sampler rng(seed);
    double general = 0.0, k = 0.0, kappa = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Index m = rng.integer(2, 5);
        const DensityState rho = rng.density(m);
        const TangentState dir = rng.tangent(m);

        // F = tr(A rho) + tr(rho B rho B)/2, M(F) = A + B rho B.
        const CMatrix a = rng.tangent(m).matrix();
        const CMatrix b = rng.tangent(m).matrix();
        const auto f = [&](const CMatrix& r) { return (a * r).trace().real() + 0.5 * (r * b * r * b).trace().real(); };
        const TangentState gf = grad_general(rho, a + b * rho.matrix() * b);
        track(general, oracle::relative(qf_metric(rho, gf, dir), oracle::fd_matrix(f, rho.matrix(), dir.matrix())));

        const CostSpec c = rng.cost(m, -3.0, 3.0);
        const auto kf = [&](const CMatrix& r) { return potential_K(DensityState(r, 0.0), c); };
        track(k, oracle::relative(qf_metric(rho, grad_K(rho, c), dir), oracle::fd_matrix(kf, rho.matrix(), dir.matrix())));

        const Index mx = rng.integer(2, 8);
        const SimplexPoint x = rng.simplex_point(mx);
        const SimplexTangent u = rng.simplex_tangent(mx);
        const CostSpec cx = rng.cost(mx, -3.0, 3.0);
        const auto kx = [&](const RVector& y) { return potential_kappa(SimplexPoint(y), cx); };
        track(kappa, oracle::relative(simplex_metric(x, grad_kappa(x, cx), u), oracle::fd_vector(kx, x.values(), u.values())));
    }
    const double worst = std::max({general, k, kappa});
    report(3, worst < 1e-6, "gradients vs central differences (h = 1e-5), 200 cases each",
           fmt("max rel error grad F %.3g, grad K %.3g, grad kappa %.3g (< 1e-6)", general, k, kappa));
}

void flow_restriction(std::uint64_t seed) {
    Sampler rng(seed);
    IntegrationParams p;
    p.step = 1e-3;
    p.t_max = 10.0;
    p.record_every = 1;
    double sup = 0.0, leak = 0.0;
    std::size_t compared = 0;
    for (int i = 0; i < 5; ++i) {
        const Index m = rng.integer(3, 6);
        const SimplexPoint x0 = rng.simplex_point(m);
        const CostSpec c = rng.cost(m, -2.0, 2.0);
        const FlowTrajectory mt = integrate_matrix(embed_mu(x0), c, p);
        const SimplexTrajectory st = integrate_simplex(x0, c, p);
        const std::size_t n = std::min(mt.states.size(), st.states.size());
        for (std::size_t j = 0; j < n; ++j) {
            const CMatrix& r = mt.states[j].matrix();
            track(sup, (r.diagonal().real() - st.states[j].values()).cwiseAbs().maxCoeff());
            track(leak, (r - CMatrix(r.diagonal().asDiagonal())).cwiseAbs().maxCoeff());
            if (mt.times[j] != st.times[j]) track(sup, INFINITY);
        }
        compared += n;
    }
    report(4, sup < 1e-8 && leak < 1e-10, "diagonal matrix flow = simplex flow on [0, 10], step 1e-3",
           fmt("sup error %.3g (< 1e-8), off-diagonal %.3g (< 1e-10), %.0f states", sup, leak, double(compared)));
}

void lp_vertices(std::uint64_t seed) {
    Sampler rng(seed);
    IntegrationParams p;
    p.t_max = 1000.0;
    double worst = 0.0, slowest = 0.0;
    int wrong = 0;
    for (int i = 0; i < 20; ++i) {
        const Index m = rng.integer(3, 10);
        const CostSpec c = rng.cost(m, -5.0, 5.0, true, 1e-2);
        // Brute force over the vertices e_j, whose objective is c_j.
        Index best = 0;
        for (Index j = 0; j < m; ++j) {
            RVector e = RVector::Zero(m);
            e(j) = 1.0;
            if (c.values().dot(e) < c[best]) best = j;
        }
        const auto start = Clock::now();
        const LpSolution sol = solve_lp(DensityState::maximally_mixed(m), c, p);
        slowest = std::max(slowest, seconds_since(start));
        RVector target = RVector::Zero(m);
        target(best) = 1.0;
        track(worst, (sol.final_point - target).cwiseAbs().maxCoeff());
        if (sol.vertex != best) ++wrong;
    }
    report(5, worst < 1e-4 && wrong == 0 && slowest < 2.0, "LP vertex from the barycenter, 20 costs, m in 3..10",
           fmt("max distance to best vertex %.3g (< 1e-4), %.0f wrong vertices, slowest run %.3f s (< 2 s)", worst,
               double(wrong), slowest));
}

// One RK4 step of the matrix flow without the projection the integrator applies.
CMatrix raw_step(const CMatrix& x, const CostSpec& c, double h) {
    const CMatrix k1 = karmarkar_matrix_field(x, c);
    const CMatrix k2 = karmarkar_matrix_field(x + 0.5 * h * k1, c);
    const CMatrix k3 = karmarkar_matrix_field(x + 0.5 * h * k2, c);
    const CMatrix k4 = karmarkar_matrix_field(x + h * k3, c);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void descent_and_conservation(std::uint64_t seed) {
    Sampler rng(seed);
    IntegrationParams p;
    p.t_max = 20.0;
    p.record_every = 1;
    double rise = 0.0, trace = 0.0, herm = 0.0;
    long steps = 0;
    for (int i = 0; i < 10; ++i) {
        const Index m = rng.integer(2, 6);
        const CostSpec c = rng.cost(m, -3.0, 3.0);
        const FlowTrajectory tr = integrate_matrix(rng.density(m), c, p);
        for (std::size_t j = 0; j < tr.states.size(); ++j) {
            const CMatrix& r = tr.states[j].matrix();
            track(trace, std::abs(r.trace().real() - 1.0));
            track(herm, hermitian_defect(r));
            if (j == 0) continue;
            track(rise, tr.potential_values[j] - tr.potential_values[j - 1]);
            // The scheme itself, before projection.
            const CMatrix raw = raw_step(tr.states[j - 1].matrix(), c, tr.times[j] - tr.times[j - 1]);
            track(trace, std::abs(raw.trace().real() - 1.0));
            track(herm, hermitian_defect(raw));
        }
        steps += tr.steps;
    }
    report(6, rise <= 1e-12 && trace < 1e-9 && herm < 1e-10, "K non-increasing, trace and Hermiticity conserved",
           fmt("max K increase per step %.3g (<= 1e-12), |tr - 1| %.3g (< 1e-9), Hermitian defect %.3g (< 1e-10), "
               "%.0f steps",
               rise, trace, herm, double(steps)));
}

void purity_flow(std::uint64_t seed) {
    Sampler rng(seed);
    IntegrationParams p;
    p.step = 1e-3;
    p.t_max = 10.0;
    p.record_every = 1;
    double comm = 0.0, eig = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Index m = rng.integer(2, 6);
        const DensityState rho0 = rng.density(m);
        const CostSpec c = CostSpec::constant(m, 2.0);
        const FlowTrajectory mt = integrate_matrix(rho0, c, p);
        const SimplexTrajectory st = integrate_simplex(SimplexPoint(spectral_decompose(rho0).theta), c, p);
        for (const DensityState& r : mt.states) track(comm, commutator_norm(r.matrix(), rho0.matrix()));
        const std::size_t n = std::min(mt.states.size(), st.states.size());
        for (std::size_t j = 0; j < n; ++j)
            track(eig, (spectral_decompose(mt.states[j], 0.0).theta - st.states[j].values()).cwiseAbs().maxCoeff());
    }
    report(7, comm < 1e-8 && eig < 1e-6, "C = 2 I: flow commutes with rho(0), eigenvalues follow the simplex flow",
           fmt("max |[rho(t), rho(0)]|_F %.3g (< 1e-8), eigenvalue error %.3g (< 1e-6)", comm, eig));
}

void lift_decomposition(std::uint64_t seed) {
    Sampler rng(seed);
    double inner = 0.0, push = 0.0;
    int pairs = 0;
    for (int i = 0; i < 10; ++i) {
        const Index m = rng.integer(2, 4);
        const int n = 2;
        const Index rows = Index{1} << n;
        const FiberPoint fiber = lift_point(rng.density(m), n, rng.unitary(rows));
        const TangentState xi = rng.tangent(m);
        const CMatrix l = horizontal_lift(fiber, xi).matrix();
        track(push, (pushforward_pi(fiber.phi, l) - xi.matrix()).cwiseAbs().maxCoeff());
        for (int j = 0; j < 100; ++j, ++pairs) {
            const CMatrix vertical = rng.anti_hermitian(rows) * fiber.phi.matrix();
            track(inner, std::abs(ambient_metric(m, l, vertical)));
        }
    }
    report(8, inner < 1e-10 && push < 1e-9, "horizontal lift is orthogonal to the fiber and pushes forward to xi",
           fmt("max |<lift, vertical>| %.3g (< 1e-10) over %.0f pairs, pushforward error %.3g (< 1e-9)", inner,
               double(pairs), push));
}

void integrator_order(std::uint64_t seed) {
    Sampler rng(seed);
    const DensityState rho0 = rng.density(4);
    const CostSpec c((RVector(4) << 1.0, -2.0, 3.0, 0.5).finished());
    auto final_at = [&](double h) {
        IntegrationParams p;
        p.step = h;
        p.t_max = 2.0;
        p.grad_tol = 1e-300;
        p.boundary_floor = 1e-300;
        p.record_every = 1000000;
        return integrate_matrix(rho0, c, p).final_state().matrix();
    };
    const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
    std::vector<CMatrix> ys;
    for (double h : hs) ys.push_back(final_at(h));
    double order = INFINITY;
    std::string orders;
    for (std::size_t i = 0; i + 2 < ys.size(); ++i) {
        const double q = std::log2((ys[i] - ys[i + 1]).norm() / (ys[i + 1] - ys[i + 2]).norm());
        order = std::isnan(q) ? -INFINITY : std::min(order, q);
        orders += (orders.empty() ? "" : ", ") + fmt("%.3f", q);
    }
    report(9, order >= 3.5, "RK4 observed order from step halving (h = 0.2 .. 0.025, T = 2)",
           "orders " + orders + fmt(", minimum %.3f (>= 3.5)", order));
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601u;
    std::printf("acceptance seed %llu\n", static_cast<unsigned long long>(seed));
    const std::vector<void (*)(std::uint64_t)> criteria{qf_equals_4r,     isometry,         gradients,
                                                        flow_restriction, lp_vertices,      descent_and_conservation,
                                                        purity_flow,      lift_decomposition, integrator_order};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i](seed + i);
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, "criterion raised", e.what());
        }
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

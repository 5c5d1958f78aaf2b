#include "qisflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qisflow/gradient.hpp"
#include "qisflow/lift.hpp"
#include "qisflow/qis_core.hpp"
#include "qisflow/random.hpp"
#include "qisflow/simplex.hpp"

namespace qisflow {

namespace {

constexpr double kFdStep = 1e-5;

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Tracker {
    CheckResult result;

    Tracker(std::string name, double tol) { result = CheckResult{std::move(name), 0.0, tol, 0}; }
    void add(double err) {
        // NaN must fail the check.
        result.max_error = std::isnan(err) ? INFINITY : std::max(result.max_error, err);
        ++result.cases;
    }
};

// Central difference of F along t -> rho + t xi renormalized to unit trace.
double directional_fd(const std::function<double(const DensityState&)>& f, const DensityState& rho,
                      const TangentState& xi) {
    auto at = [&](double t) {
        CMatrix r = rho.matrix() + t * xi.matrix();
        r /= r.trace().real();
        return f(DensityState(r, 0.0));
    };
    return (at(kFdStep) - at(-kFdStep)) / (2.0 * kFdStep);
}

SuiteReport metric_suite(std::uint64_t seed, int count) {
    Sampler rng(seed);
    Tracker qf_vs_r("QF = 4R (relative)", 1e-9);
    Tracker fiber("R independent of fiber point (relative)", 1e-10);
    Tracker sld_res("SLD residual |(rho L + L rho)/2 - xi|_F", 1e-10);
    for (int i = 0; i < count; ++i) {
        const Index m = rng.integer(2, 4);
        const int n = 2;
        const DensityState rho = rng.density(m);
        const TangentState xi = rng.tangent(m);
        const TangentState xi2 = rng.tangent(m);
        const double qf = qf_metric(rho, xi, xi2);
        const double r = r_metric(rho, xi, xi2, n);
        qf_vs_r.add(relative(qf, 4.0 * r));
        const double r2 = r_metric(lift_point(rho, n, rng.unitary(Index{1} << n)), xi, xi2);
        fiber.add(relative(r, r2));
        const CMatrix l = sld(rho, xi);
        sld_res.add((0.5 * (rho.matrix() * l + l * rho.matrix()) - xi.matrix()).norm());
    }
    return SuiteReport{"metric", {qf_vs_r.result, fiber.result, sld_res.result}};
}

SuiteReport isometry_suite(std::uint64_t seed, int count) {
    Sampler rng(seed);
    Tracker iso("embedded metric = simplex metric (absolute)", 1e-12);
    for (int i = 0; i < count; ++i) {
        const Index m = rng.integer(2, 8);
        const SimplexPoint x = rng.simplex_point(m);
        const IsometryPair pair = check_isometry(x, rng.simplex_tangent(m), rng.simplex_tangent(m));
        iso.add(std::abs(pair.embedded - pair.simplex));
    }
    return SuiteReport{"isometry", {iso.result}};
}

SuiteReport gradient_suite(std::uint64_t seed, int count) {
    Sampler rng(seed);
    Tracker general("grad F pairing vs finite difference (relative)", 1e-6);
    Tracker k_check("grad K pairing vs finite difference (relative)", 1e-6);
    Tracker kappa_check("grad kappa pairing vs finite difference (relative)", 1e-6);
    Tracker consistency("grad K vs general gradient of M(K) (Frobenius)", 1e-12);
    for (int i = 0; i < count; ++i) {
        const Index m = rng.integer(2, 5);
        const DensityState rho = rng.density(m);
        const TangentState dir = rng.tangent(m);

        // F(rho) = tr(A rho) + tr(rho B rho B)/2 has M(F) = A + B rho B.
        const CMatrix a = rng.tangent(m).matrix();
        const CMatrix b = rng.tangent(m).matrix();
        const PotentialCallback f{
            [&](const DensityState& r) {
                return (a * r.matrix()).trace().real() +
                       0.5 * (r.matrix() * b * r.matrix() * b).trace().real();
            },
            [&](const DensityState& r) { return CMatrix(a + b * r.matrix() * b); },
        };
        general.add(relative(qf_metric(rho, grad_potential(rho, f), dir), directional_fd(f.value, rho, dir)));

        const CostSpec c = rng.cost(m, -3.0, 3.0);
        const auto k_value = [&](const DensityState& r) { return potential_K(r, c); };
        k_check.add(relative(qf_metric(rho, grad_K(rho, c), dir), directional_fd(k_value, rho, dir)));
        consistency.add((grad_K(rho, c).matrix() - grad_general(rho, m_operator_K(rho, c)).matrix()).norm());

        const SimplexPoint x = rng.simplex_point(m);
        const SimplexTangent u = rng.simplex_tangent(m);
        const auto kappa_at = [&](double t) {
            RVector y = x.values() + t * u.values();
            return potential_kappa(SimplexPoint(y / y.sum()), c);
        };
        const double fd = (kappa_at(kFdStep) - kappa_at(-kFdStep)) / (2.0 * kFdStep);
        kappa_check.add(relative(simplex_metric(x, grad_kappa(x, c), u), fd));
    }
    return SuiteReport{"gradient", {general.result, k_check.result, kappa_check.result, consistency.result}};
}

SuiteReport lift_suite(std::uint64_t seed, int count) {
    Sampler rng(seed);
    Tracker horizontal("horizontality |Phi l^dagger - l Phi^dagger|", 1e-10);
    Tracker pushforward("pi_* of lift returns xi", 1e-9);
    Tracker orthogonal("lift orthogonal to vertical vectors", 1e-10);
    Tracker reconstruct("vertical + horizontal = X", 1e-10);
    Tracker linear("lift is real-linear", 1e-10);
    for (int i = 0; i < count; ++i) {
        const Index m = rng.integer(2, 4);
        const int n = 2;
        const Index rows = Index{1} << n;
        const DensityState rho = rng.density(m);
        const FiberPoint fiber = lift_point(rho, n, rng.unitary(rows));
        const TangentState xi = rng.tangent(m);
        const TangentState xi2 = rng.tangent(m);
        const CMatrix& phi = fiber.phi.matrix();

        const CMatrix l = horizontal_lift(fiber, xi).matrix();
        horizontal.add((phi * l.adjoint() - l * phi.adjoint()).cwiseAbs().maxCoeff());
        pushforward.add((pushforward_pi(fiber.phi, l) - xi.matrix()).cwiseAbs().maxCoeff());

        const CMatrix eta = rng.anti_hermitian(rows);
        orthogonal.add(std::abs(ambient_metric(m, l, eta * phi)));

        // A generic tangent: the lift of xi2 plus a vertical vector.
        const TupleTangent x(fiber.phi, horizontal_lift(fiber, xi2).matrix() + rng.anti_hermitian(rows) * phi);
        const TangentSplit split = split_tangent(fiber, x);
        reconstruct.add((split.vertical + split.horizontal - x.matrix()).cwiseAbs().maxCoeff());
        orthogonal.add(std::abs(vertical_component_check(fiber, x, eta)));

        const double s = rng.normal();
        const double t = rng.normal();
        const CMatrix combo = horizontal_lift(fiber, s * xi + t * xi2).matrix();
        const CMatrix parts = s * l + t * horizontal_lift(fiber, xi2).matrix();
        linear.add((combo - parts).cwiseAbs().maxCoeff());
    }
    return SuiteReport{"lift",
                       {horizontal.result, pushforward.result, orthogonal.result, reconstruct.result, linear.result}};
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"metric", "isometry", "gradient", "lift", "all"};
    return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, int count) {
    if (count <= 0) throw ContractError("run_suite: count must be positive");
    if (name == "metric") return metric_suite(seed, count);
    if (name == "isometry") return isometry_suite(seed, count);
    if (name == "gradient") return gradient_suite(seed, count);
    if (name == "lift") return lift_suite(seed, count);
    if (name == "all") {
        SuiteReport all{"all", {}};
        for (const SuiteReport& r : {metric_suite(seed, count), isometry_suite(seed, count),
                                     gradient_suite(seed, count), lift_suite(seed, count)})
            for (const CheckResult& c : r.checks) all.checks.push_back(c);
        return all;
    }
    throw ContractError("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace qisflow

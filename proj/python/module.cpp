#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qisflow/gradient.hpp"
#include "qisflow/integrator.hpp"
#include "qisflow/lift.hpp"
#include "qisflow/lp.hpp"
#include "qisflow/qis_core.hpp"
#include "qisflow/simplex.hpp"
#include "qisflow/verify.hpp"

namespace py = pybind11;
using namespace qisflow;

namespace {

// Stacks a list of m x m states into an (N, m, m) complex array.
py::array_t<Complex> stack(const std::vector<DensityState>& states) {
    const Index m = states.empty() ? 0 : states.front().dim();
    py::array_t<Complex> out({static_cast<py::ssize_t>(states.size()), static_cast<py::ssize_t>(m),
                              static_cast<py::ssize_t>(m)});
    auto v = out.mutable_unchecked<3>();
    for (std::size_t i = 0; i < states.size(); ++i)
        for (Index j = 0; j < m; ++j)
            for (Index k = 0; k < m; ++k) v(i, j, k) = states[i](j, k);
    return out;
}

py::array_t<double> stack(const std::vector<SimplexPoint>& states) {
    const Index m = states.empty() ? 0 : states.front().dim();
    py::array_t<double> out({static_cast<py::ssize_t>(states.size()), static_cast<py::ssize_t>(m)});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < states.size(); ++i)
        for (Index j = 0; j < m; ++j) v(i, j) = states[i][j];
    return out;
}

template <class Trajectory>
py::dict to_dict(const Trajectory& t) {
    py::dict d;
    d["times"] = t.times;
    d["states"] = stack(t.states);
    d["potential"] = t.potential_values;
    d["stop_reason"] = std::string(to_string(t.stop_reason));
    d["nearest_vertex"] = t.nearest_vertex;
    d["steps"] = t.steps;
    return d;
}

CostSpec cost(const RVector& c) { return CostSpec(c); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Karmarkar gradient flow on density matrices";

    // Later registrations are tried first, so the subclasses win.
    const auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", base.ptr());
    py::register_exception<RegularityError>(m, "RegularityError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    py::class_<IntegrationParams>(m, "IntegrationParams")
        .def(py::init([](double step, double t_max, double grad_tol, double boundary_floor, int record_every) {
                 IntegrationParams p{step, t_max, grad_tol, boundary_floor, record_every};
                 p.validate();
                 return p;
             }),
             py::arg("step") = 1e-2, py::arg("t_max") = 100.0, py::arg("grad_tol") = 1e-9,
             py::arg("boundary_floor") = 1e-10, py::arg("record_every") = 10)
        .def_readwrite("step", &IntegrationParams::step)
        .def_readwrite("t_max", &IntegrationParams::t_max)
        .def_readwrite("grad_tol", &IntegrationParams::grad_tol)
        .def_readwrite("boundary_floor", &IntegrationParams::boundary_floor)
        .def_readwrite("record_every", &IntegrationParams::record_every);

    // States and tangents cross the boundary as plain arrays and are
    // validated on the way in.
    m.def(
        "spectral_decompose",
        [](const CMatrix& rho) {
            const SpectralDecomp s = spectral_decompose(DensityState(rho));
            return py::make_tuple(s.h, s.theta);
        },
        py::arg("rho"), "Returns (h, theta) with rho = h diag(theta) h^dagger, theta ascending.");
    m.def(
        "sld", [](const CMatrix& rho, const CMatrix& xi) { return sld(DensityState(rho), TangentState(xi)); },
        py::arg("rho"), py::arg("xi"));
    m.def(
        "qf_metric",
        [](const CMatrix& rho, const CMatrix& xi, const CMatrix& xi2) {
            return qf_metric(DensityState(rho), TangentState(xi), TangentState(xi2));
        },
        py::arg("rho"), py::arg("xi"), py::arg("xi2"));
    m.def(
        "r_metric",
        [](const CMatrix& rho, const CMatrix& xi, const CMatrix& xi2, std::optional<int> n) {
            const DensityState r(rho);
            return r_metric(r, TangentState(xi), TangentState(xi2), n ? *n : default_qubits(r.dim()));
        },
        py::arg("rho"), py::arg("xi"), py::arg("xi2"), py::arg("n") = py::none());
    m.def(
        "horizontal_lift",
        [](const CMatrix& rho, const CMatrix& xi, std::optional<int> n, std::optional<CMatrix> g) {
            const DensityState r(rho);
            const FiberPoint f = lift_point(r, n ? *n : default_qubits(r.dim()), g);
            return py::make_tuple(f.phi.matrix(), horizontal_lift(f, TangentState(xi)).matrix());
        },
        py::arg("rho"), py::arg("xi"), py::arg("n") = py::none(), py::arg("g") = py::none(),
        "Returns (phi, lift): a point over rho and the horizontal lift of xi at it.");

    m.def(
        "grad_general", [](const CMatrix& rho, const CMatrix& mf) { return grad_general(DensityState(rho), mf).matrix(); },
        py::arg("rho"), py::arg("mf"));
    m.def(
        "potential_K", [](const CMatrix& rho, const RVector& c) { return potential_K(DensityState(rho), cost(c)); },
        py::arg("rho"), py::arg("c"));
    m.def(
        "grad_K", [](const CMatrix& rho, const RVector& c) { return grad_K(DensityState(rho), cost(c)).matrix(); },
        py::arg("rho"), py::arg("c"));

    m.def(
        "simplex_metric",
        [](const RVector& x, const RVector& u, const RVector& u2) {
            return simplex_metric(SimplexPoint(x), SimplexTangent(u), SimplexTangent(u2));
        },
        py::arg("x"), py::arg("u"), py::arg("u2"));
    m.def(
        "potential_kappa", [](const RVector& x, const RVector& c) { return potential_kappa(SimplexPoint(x), cost(c)); },
        py::arg("x"), py::arg("c"));
    m.def(
        "grad_kappa", [](const RVector& x, const RVector& c) { return grad_kappa(SimplexPoint(x), cost(c)).values(); },
        py::arg("x"), py::arg("c"));
    m.def(
        "check_isometry",
        [](const RVector& x, const RVector& u, const RVector& u2) {
            const IsometryPair p = check_isometry(SimplexPoint(x), SimplexTangent(u), SimplexTangent(u2));
            return py::make_tuple(p.embedded, p.simplex);
        },
        py::arg("x"), py::arg("u"), py::arg("u2"));

    m.def(
        "integrate_matrix",
        [](const CMatrix& rho0, const RVector& c, const IntegrationParams& p) {
            return to_dict(integrate_matrix(DensityState(rho0), cost(c), p));
        },
        py::arg("rho0"), py::arg("c"), py::arg("params") = IntegrationParams{});
    m.def(
        "integrate_simplex",
        [](const RVector& x0, const RVector& c, const IntegrationParams& p) {
            return to_dict(integrate_simplex(SimplexPoint(x0), cost(c), p));
        },
        py::arg("x0"), py::arg("c"), py::arg("params") = IntegrationParams{});
    m.def(
        "solve_lp",
        [](const RVector& c, std::optional<CMatrix> rho0, const IntegrationParams& p, bool simplex, bool shift) {
            const CostSpec cs = cost(c);
            const DensityState start = rho0 ? DensityState(*rho0) : DensityState::maximally_mixed(cs.dim());
            const LpSolution s = solve_lp(start, cs, p, LpOptions{simplex, shift});
            py::dict d;
            d["vertex"] = s.vertex;
            d["objective"] = s.objective;
            d["stop_reason"] = std::string(to_string(s.stop_reason));
            d["final_point"] = s.final_point;
            d["cost_shift"] = py::make_tuple(s.shift.offset, s.shift.scale);
            return d;
        },
        py::arg("c"), py::arg("rho0") = py::none(), py::arg("params") = IntegrationParams{1e-2, 1000.0},
        py::arg("simplex") = false, py::arg("shift") = true,
        "Minimizes sum c_j x_j over the simplex by following the flow; vertex is 0-based.");

    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed, int count) {
            const SuiteReport r = run_suite(name, seed, count);
            py::list out;
            for (const CheckResult& c : r.checks) {
                py::dict d;
                d["identity"] = c.identity;
                d["max_error"] = c.max_error;
                d["tolerance"] = c.tolerance;
                d["cases"] = c.cases;
                d["passed"] = c.passed();
                out.append(d);
            }
            return out;
        },
        py::arg("name"), py::arg("seed") = 1, py::arg("count") = 100);
}

#include "qisflow/lift.hpp"

#include <cmath>
#include <sstream>

namespace qisflow {

namespace {

bool is_power_of_two(Index k) { return k > 0 && (k & (k - 1)) == 0; }

Index rows_for(int n) {
    if (n < 0 || n > 30) throw ContractError("qubit count out of range");
    return Index{1} << n;
}

double unitarity_defect(const CMatrix& u) {
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

int default_qubits(Index m) {
    if (m <= 0) throw ContractError("default_qubits: dimension must be positive");
    int n = 0;
    while ((Index{1} << n) < m) ++n;
    return n;
}

// ---------------------------------------------------------------------------

TupleState::TupleState(CMatrix phi) : phi_(std::move(phi)) {
    const Index m = phi_.cols();
    if (m == 0 || !is_power_of_two(phi_.rows()) || phi_.rows() < m) {
        std::ostringstream os;
        os << "TupleState: shape " << phi_.rows() << "x" << m
           << " is not 2^n x m with 2^n >= m";
        throw ContractError(os.str());
    }
    if (!phi_.allFinite()) throw ContractError("TupleState: non-finite entries");
    const double norm = phi_.squaredNorm() / static_cast<double>(m);
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "TupleState: norm is " << norm << ", expected 1";
        throw ContractError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(phi_.adjoint() * phi_ / static_cast<double>(m),
                                              Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("TupleState: eigensolver failed");
    if (!(es.eigenvalues().minCoeff() > kDefaultPositivityFloor))
        throw RegularityError("TupleState: tuple is not of full column rank");
}

int TupleState::qubits() const {
    int n = 0;
    while ((Index{1} << n) < phi_.rows()) ++n;
    return n;
}

TupleTangent::TupleTangent(const TupleState& base, CMatrix x) : x_(std::move(x)) {
    if (x_.rows() != base.rows() || x_.cols() != base.columns())
        throw ContractError("TupleTangent: shape does not match the base tuple");
    const double radial = 2.0 * (x_.adjoint() * base.matrix()).trace().real();
    if (std::abs(radial) > 1e-10 * std::max(1.0, x_.norm())) {
        std::ostringstream os;
        os << "TupleTangent: tr(X^dagger Phi + Phi^dagger X) = " << radial << ", expected 0";
        throw ContractError(os.str());
    }
}

// ---------------------------------------------------------------------------

DensityState project_pi(const TupleState& phi) {
    const CMatrix& p = phi.matrix();
    return DensityState(p.adjoint() * p / static_cast<double>(phi.columns()));
}

CMatrix pushforward_pi(const TupleState& phi, const CMatrix& x) {
    const CMatrix& p = phi.matrix();
    if (x.rows() != p.rows() || x.cols() != p.cols())
        throw ContractError("pushforward_pi: shape mismatch");
    return (x.adjoint() * p + p.adjoint() * x) / static_cast<double>(phi.columns());
}

FiberPoint lift_point(const DensityState& rho, int n, const std::optional<CMatrix>& g) {
    const Index m = rho.dim();
    const Index rows = rows_for(n);
    if (rows < m) {
        std::ostringstream os;
        os << "lift_point: 2^" << n << " rows cannot hold " << m << " columns";
        throw ContractError(os.str());
    }
    CMatrix gm = g ? *g : CMatrix::Identity(rows, rows);
    if (gm.rows() != rows || gm.cols() != rows)
        throw ContractError("lift_point: g must be a square unitary of degree 2^n");
    if (unitarity_defect(gm) > 1e-10) throw ContractError("lift_point: g is not unitary");

    SpectralDecomp spec = spectral_decompose(rho);
    const double sm = std::sqrt(static_cast<double>(m));
    const CMatrix block = gm.leftCols(m) * (sm * spec.theta.cwiseSqrt()).cast<Complex>().asDiagonal();
    CMatrix phi = block * spec.h.adjoint();
    return FiberPoint{TupleState(std::move(phi)), std::move(gm), std::move(spec)};
}

FiberPoint factor_tuple(const TupleState& phi) {
    const Index m = phi.columns();
    const Index rows = phi.rows();
    SpectralDecomp spec = spectral_decompose(project_pi(phi));
    const double sm = std::sqrt(static_cast<double>(m));
    // Columns g_j = Phi h_j / (sqrt(m) sqrt(theta_j)) are orthonormal.
    const CMatrix head =
        phi.matrix() * spec.h * (sm * spec.theta.cwiseSqrt()).cwiseInverse().cast<Complex>().asDiagonal();
    CMatrix g(rows, rows);
    g.leftCols(m) = head;
    if (rows > m) {
        Eigen::HouseholderQR<CMatrix> qr(head);
        const CMatrix q = qr.householderQ() * CMatrix::Identity(rows, rows);
        g.rightCols(rows - m) = q.rightCols(rows - m);
    }
    if (unitarity_defect(g) > 1e-9) throw NumericError("factor_tuple: factorization lost unitarity");
    return FiberPoint{phi, std::move(g), std::move(spec)};
}

CMatrix alpha_matrix(const RVector& theta, const CMatrix& chi) {
    const Index m = theta.size();
    if (chi.rows() != m || chi.cols() != m) throw ContractError("alpha_matrix: shape mismatch");
    if (!(theta.minCoeff() > 0.0)) throw ContractError("alpha_matrix: eigenvalues must be positive");
    CMatrix out(m, m);
    for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < m; ++k)
            out(j, k) = (theta(j) - theta(k)) / (theta(j) + theta(k)) * chi(j, k);
    return out;
}

TupleTangent horizontal_lift(const FiberPoint& fiber, const TangentState& xi) {
    const Index m = fiber.phi.columns();
    if (xi.dim() != m) throw ContractError("horizontal_lift: dimension mismatch");
    const SpectralDecomp& spec = fiber.spectral;
    const CMatrix chi = spec.h.adjoint() * xi.matrix() * spec.h;
    const CMatrix top =
        spec.theta.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * (chi + alpha_matrix(spec.theta, chi));
    const double scale = 0.5 * std::sqrt(static_cast<double>(m));
    return TupleTangent(fiber.phi, scale * fiber.g.leftCols(m) * top * spec.h.adjoint());
}

double ambient_metric(Index m, const CMatrix& x, const CMatrix& x2) {
    if (x.rows() != x2.rows() || x.cols() != x2.cols())
        throw ContractError("ambient_metric: shape mismatch");
    return (x.adjoint() * x2).trace().real() / static_cast<double>(m);
}

double r_metric(const FiberPoint& fiber, const TangentState& xi, const TangentState& xi2) {
    return ambient_metric(fiber.phi.columns(), horizontal_lift(fiber, xi).matrix(),
                          horizontal_lift(fiber, xi2).matrix());
}

double r_metric(const DensityState& rho, const TangentState& xi, const TangentState& xi2, int n) {
    return r_metric(lift_point(rho, n), xi, xi2);
}

TangentSplit split_tangent(const FiberPoint& fiber, const TupleTangent& x) {
    // Vertical vectors eta Phi push forward to zero, so the horizontal part
    // of x is the lift of its pushforward.
    const TangentState xi(pushforward_pi(fiber.phi, x.matrix()));
    CMatrix horizontal = horizontal_lift(fiber, xi).matrix();
    CMatrix vertical = x.matrix() - horizontal;
    return TangentSplit{std::move(vertical), std::move(horizontal)};
}

double vertical_component_check(const FiberPoint& fiber, const TupleTangent& x, const CMatrix& eta) {
    const Index rows = fiber.phi.rows();
    if (eta.rows() != rows || eta.cols() != rows)
        throw ContractError("vertical_component_check: eta must be of degree 2^n");
    if ((eta + eta.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ContractError("vertical_component_check: eta must be anti-Hermitian");
    const TangentSplit split = split_tangent(fiber, x);
    return ambient_metric(fiber.phi.columns(), split.horizontal, eta * fiber.phi.matrix());
}

}  // namespace qisflow

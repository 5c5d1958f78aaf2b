#include "qisflow/qis_core.hpp"

#include <cmath>
#include <sstream>

namespace qisflow {

namespace {

void require_square(const CMatrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
        throw ContractError(os.str());
    }
}

void require_finite(const CMatrix& a, const char* what) {
    if (!a.allFinite()) throw ContractError(std::string(what) + ": non-finite entries");
}

void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw ContractError(os.str());
    }
}

}  // namespace

double hermitian_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) return INFINITY;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

bool is_diagonal(const CMatrix& a, double tol) {
    for (Index j = 0; j < a.rows(); ++j)
        for (Index k = 0; k < a.cols(); ++k)
            if (j != k && std::abs(a(j, k)) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// DensityState

DensityState::DensityState(const CMatrix& entries, double positivity_floor) {
    require_square(entries, "DensityState");
    require_finite(entries, "DensityState");
    const double defect = hermitian_defect(entries);
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "DensityState: matrix is not Hermitian (defect " << defect << ")";
        throw ContractError(os.str());
    }
    rho_ = hermitian_part(entries);
    const double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os.precision(17);
        os << "DensityState: trace is " << tr << ", expected 1";
        throw ContractError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("DensityState: eigensolver failed");
    const double lowest = es.eigenvalues().minCoeff();
    if (!(lowest > positivity_floor)) {
        std::ostringstream os;
        os << "DensityState: minimum eigenvalue " << lowest << " is below the floor "
           << positivity_floor;
        throw RegularityError(os.str());
    }
}

DensityState DensityState::maximally_mixed(Index m) {
    if (m <= 0) throw ContractError("maximally_mixed: dimension must be positive");
    return DensityState(CMatrix::Identity(m, m) / static_cast<double>(m));
}

DensityState DensityState::diagonal(const RVector& weights, double positivity_floor) {
    return DensityState(weights.cast<Complex>().asDiagonal().toDenseMatrix(), positivity_floor);
}

// ---------------------------------------------------------------------------
// TangentState

TangentState::TangentState(const CMatrix& entries) {
    require_square(entries, "TangentState");
    require_finite(entries, "TangentState");
    const double defect = hermitian_defect(entries);
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "TangentState: matrix is not Hermitian (defect " << defect << ")";
        throw ContractError(os.str());
    }
    xi_ = hermitian_part(entries);
    const double tr = xi_.trace().real();
    if (std::abs(tr) > kTraceTol) {
        std::ostringstream os;
        os << "TangentState: trace is " << tr << ", expected 0";
        throw ContractError(os.str());
    }
}

TangentState TangentState::zero(Index m) { return TangentState(Raw{}, CMatrix::Zero(m, m)); }

TangentState TangentState::diagonal(const RVector& entries) {
    return TangentState(entries.cast<Complex>().asDiagonal().toDenseMatrix());
}

TangentState operator+(const TangentState& a, const TangentState& b) {
    require_same_dim(a.dim(), b.dim(), "TangentState +");
    return TangentState(TangentState::Raw{}, a.xi_ + b.xi_);
}

TangentState operator*(double s, const TangentState& a) {
    return TangentState(TangentState::Raw{}, s * a.xi_);
}

// ---------------------------------------------------------------------------
// Spectral decomposition, SLD, metric

SpectralDecomp spectral_decompose(const DensityState& rho, double positivity_floor) {
    // Eigen returns eigenvalues in ascending order with matching columns.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    if (es.info() != Eigen::Success) throw NumericError("spectral_decompose: eigensolver failed");
    SpectralDecomp out{es.eigenvectors(), es.eigenvalues()};
    if (!(out.theta.minCoeff() > positivity_floor)) {
        std::ostringstream os;
        os << "spectral_decompose: eigenvalue " << out.theta.minCoeff()
           << " is below the positivity floor " << positivity_floor;
        throw RegularityError(os.str());
    }
    return out;
}

CMatrix sld(const DensityState& rho, const TangentState& xi) {
    require_same_dim(rho.dim(), xi.dim(), "sld");
    const SpectralDecomp spec = spectral_decompose(rho);
    const Index m = rho.dim();
    CMatrix chi = spec.h.adjoint() * xi.matrix() * spec.h;
    for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < m; ++k) chi(j, k) *= 2.0 / (spec.theta(j) + spec.theta(k));
    return spec.h * chi * spec.h.adjoint();
}

double qf_metric(const SpectralDecomp& spec, const TangentState& xi, const TangentState& xi2) {
    require_same_dim(spec.h.rows(), xi.dim(), "qf_metric");
    require_same_dim(xi.dim(), xi2.dim(), "qf_metric");
    const Index m = xi.dim();
    const CMatrix chi = spec.h.adjoint() * xi.matrix() * spec.h;
    const CMatrix chi2 = spec.h.adjoint() * xi2.matrix() * spec.h;
    Complex sum = 0.0;
    double magnitude = 0.0;
    for (Index j = 0; j < m; ++j) {
        for (Index k = 0; k < m; ++k) {
            const Complex term = std::conj(chi(j, k)) * chi2(j, k) / (spec.theta(j) + spec.theta(k));
            sum += term;
            magnitude += std::abs(term);
        }
    }
    if (std::abs(sum.imag()) > 1e-12 * std::max(1.0, magnitude)) {
        std::ostringstream os;
        os << "qf_metric: imaginary residue " << sum.imag() << " exceeds tolerance";
        throw NumericError(os.str());
    }
    return 2.0 * sum.real();
}

double qf_metric(const DensityState& rho, const TangentState& xi, const TangentState& xi2) {
    require_same_dim(rho.dim(), xi.dim(), "qf_metric");
    return qf_metric(spectral_decompose(rho), xi, xi2);
}

double d_metric(const DensityState& theta, const TangentState& z, const TangentState& z2) {
    if (!is_diagonal(theta.matrix(), kHermitianTol) || !is_diagonal(z.matrix(), kHermitianTol) ||
        !is_diagonal(z2.matrix(), kHermitianTol))
        throw ContractError("d_metric: all arguments must be diagonal");
    return qf_metric(theta, z, z2);
}

}  // namespace qisflow

#include "qisflow/gradient.hpp"

#include <cmath>
#include <sstream>

namespace qisflow {

namespace {

void require_cost_dim(Index m, const CostSpec& c, const char* what) {
    if (c.dim() != m) {
        std::ostringstream os;
        os << what << ": cost has " << c.dim() << " entries, state dimension is " << m;
        throw ContractError(os.str());
    }
}

}  // namespace

CostSpec::CostSpec(RVector c) : c_(std::move(c)) {
    if (c_.size() == 0) throw ContractError("CostSpec: empty cost vector");
    for (Index j = 0; j < c_.size(); ++j) {
        if (!std::isfinite(c_(j)) || c_(j) == 0.0) {
            std::ostringstream os;
            os << "CostSpec: entry " << j << " must be finite and nonzero, got " << c_(j);
            throw ContractError(os.str());
        }
    }
}

CostSpec CostSpec::constant(Index m, double value) { return CostSpec(RVector::Constant(m, value)); }

CMatrix CostSpec::as_matrix() const { return c_.cast<Complex>().asDiagonal().toDenseMatrix(); }

TangentState grad_general(const DensityState& rho, const CMatrix& mf) {
    if (mf.rows() != rho.dim() || mf.cols() != rho.dim())
        throw ContractError("grad_general: M(F) has the wrong shape");
    const double defect = hermitian_defect(mf);
    if (defect > kHermitianTol) {
        std::ostringstream os;
        os << "grad_general: M(F) is not Hermitian (defect " << defect << ")";
        throw ContractError(os.str());
    }
    const CMatrix& r = rho.matrix();
    const Complex c = (r * mf).trace();
    return TangentState(0.5 * (r * mf + mf * r) - c.real() * r);
}

TangentState grad_potential(const DensityState& rho, const PotentialCallback& f) {
    return grad_general(rho, f.m_of(rho));
}

double potential_K(const DensityState& rho, const CostSpec& c) {
    require_cost_dim(rho.dim(), c, "potential_K");
    // tr(C rho^2) = sum_j c_j sum_k |rho_jk|^2
    const CMatrix& r = rho.matrix();
    double sum = 0.0;
    for (Index j = 0; j < r.rows(); ++j) sum += c[j] * r.row(j).squaredNorm();
    return 0.5 * sum;
}

CMatrix m_operator_K(const DensityState& rho, const CostSpec& c) {
    require_cost_dim(rho.dim(), c, "m_operator_K");
    const CMatrix& r = rho.matrix();
    CMatrix out(r.rows(), r.cols());
    for (Index j = 0; j < r.rows(); ++j)
        for (Index k = 0; k < r.cols(); ++k) out(j, k) = 0.5 * (c[j] + c[k]) * r(j, k);
    return out;
}

CMatrix karmarkar_matrix_field(const CMatrix& rho, const CostSpec& c) {
    if (rho.rows() != rho.cols()) throw ContractError("karmarkar_matrix_field: non-square state");
    require_cost_dim(rho.rows(), c, "karmarkar_matrix_field");
    const Eigen::DiagonalMatrix<Complex, Eigen::Dynamic> cm(c.values().cast<Complex>());
    const CMatrix rho2 = rho * rho;
    const CMatrix c_rho = cm * rho;
    const CMatrix sym = rho2 * cm + 2.0 * rho * c_rho + cm * rho2;
    const double s = (rho * c_rho).trace().real();  // tr(rho C rho)
    return -0.25 * sym + s * rho;
}

TangentState grad_K(const DensityState& rho, const CostSpec& c) {
    require_cost_dim(rho.dim(), c, "grad_K");
    return TangentState(-karmarkar_matrix_field(rho.matrix(), c));
}

TangentState flow_field_K(const DensityState& rho, const CostSpec& c) { return -grad_K(rho, c); }

PotentialCallback karmarkar_potential(const CostSpec& c) {
    return PotentialCallback{
        [c](const DensityState& rho) { return potential_K(rho, c); },
        [c](const DensityState& rho) { return m_operator_K(rho, c); },
    };
}

}  // namespace qisflow

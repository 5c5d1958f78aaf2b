#pragma once

#include <functional>

#include "qisflow/qis_core.hpp"

namespace qisflow {

/// Diagonal cost C = diag(c) with every c_j nonzero.
class CostSpec {
public:
    explicit CostSpec(RVector c);

    static CostSpec constant(Index m, double value);

    const RVector& values() const { return c_; }
    Index dim() const { return c_.size(); }
    double operator[](Index j) const { return c_(j); }
    CMatrix as_matrix() const;

private:
    RVector c_;
};

/// A smooth potential F on the space of regular density matrices together
/// with its derivative matrix M(F). M(F) is the unique Hermitian matrix with
/// dF_rho(xi) = tr(M(F) xi) for every Hermitian xi (its (j,k) entry is the
/// Wirtinger derivative of F with respect to conj(rho_jk)).
struct PotentialCallback {
    std::function<double(const DensityState&)> value;
    std::function<CMatrix(const DensityState&)> m_of;
};

/// Gradient in the SLD Fisher metric: (rho M + M rho)/2 - tr(rho M) rho.
TangentState grad_general(const DensityState& rho, const CMatrix& mf);

TangentState grad_potential(const DensityState& rho, const PotentialCallback& f);

/// K(rho) = tr(C rho^2) / 2.
double potential_K(const DensityState& rho, const CostSpec& c);

/// M(K) = (C rho + rho C) / 2, entrywise (c_j + c_k) rho_jk / 2.
CMatrix m_operator_K(const DensityState& rho, const CostSpec& c);

/// (rho^2 C + 2 rho C rho + C rho^2)/4 - tr(rho C rho) rho.
TangentState grad_K(const DensityState& rho, const CostSpec& c);

/// Right-hand side of the gradient flow, -grad K.
TangentState flow_field_K(const DensityState& rho, const CostSpec& c);

/// -grad K evaluated on an arbitrary square matrix without validation.
/// The integrator evaluates Runge-Kutta stages with it, and it extends
/// continuously to the boundary (vertex projectors are zeros of it).
CMatrix karmarkar_matrix_field(const CMatrix& rho, const CostSpec& c);

PotentialCallback karmarkar_potential(const CostSpec& c);

}  // namespace qisflow

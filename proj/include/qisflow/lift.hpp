#pragma once

// Normalized ordered tuples of n-qubit states, the projection onto density
// matrices, and the horizontal lift that induces the reduced metric.

#include <optional>

#include "qisflow/qis_core.hpp"

namespace qisflow {

/// Smallest n with 2^n >= m.
int default_qubits(Index m);

/// A 2^n x m complex matrix with (1/m) tr(Phi^dagger Phi) = 1 and full
/// column rank.
class TupleState {
public:
    explicit TupleState(CMatrix phi);

    const CMatrix& matrix() const { return phi_; }
    Index rows() const { return phi_.rows(); }
    Index columns() const { return phi_.cols(); }
    int qubits() const;

private:
    CMatrix phi_;
};

/// Tangent vector X at a tuple: Re tr(X^dagger Phi) = 0.
class TupleTangent {
public:
    TupleTangent(const TupleState& base, CMatrix x);

    const CMatrix& matrix() const { return x_; }

private:
    CMatrix x_;
};

/// A tuple together with the factorization Phi = g [sqrt(m) sqrt(Theta); 0] h^dagger.
struct FiberPoint {
    TupleState phi;
    CMatrix g;
    SpectralDecomp spectral;
};

/// pi_m(Phi) = Phi^dagger Phi / m.
DensityState project_pi(const TupleState& phi);

/// Differential of pi_m: (X^dagger Phi + Phi^dagger X) / m.
CMatrix pushforward_pi(const TupleState& phi, const CMatrix& x);

/// Builds a fiber point over rho. g defaults to the identity of degree 2^n.
FiberPoint lift_point(const DensityState& rho, int n, const std::optional<CMatrix>& g = std::nullopt);

/// Recovers the factorization of an arbitrary tuple.
FiberPoint factor_tuple(const TupleState& phi);

/// alpha_jk = (theta_j - theta_k)/(theta_j + theta_k) chi_jk
CMatrix alpha_matrix(const RVector& theta, const CMatrix& chi);

TupleTangent horizontal_lift(const FiberPoint& fiber, const TangentState& xi);

/// (X, X2) = Re tr(X^dagger X2) / m
double ambient_metric(Index m, const CMatrix& x, const CMatrix& x2);

/// Reduced metric: ambient metric of the horizontal lifts at the given fiber point.
double r_metric(const FiberPoint& fiber, const TangentState& xi, const TangentState& xi2);

/// Reduced metric at the default fiber point over rho with 2^n rows.
double r_metric(const DensityState& rho, const TangentState& xi, const TangentState& xi2, int n);

struct TangentSplit {
    CMatrix vertical;
    CMatrix horizontal;
};

/// X = vertical + horizontal with the horizontal part the lift of pi_*(X).
TangentSplit split_tangent(const FiberPoint& fiber, const TupleTangent& x);

/// Ambient inner product of the horizontal part of x with eta Phi, for an
/// anti-Hermitian eta of degree 2^n. Zero when the splitting is orthogonal.
double vertical_component_check(const FiberPoint& fiber, const TupleTangent& x, const CMatrix& eta);

}  // namespace qisflow

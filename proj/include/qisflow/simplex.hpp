#pragma once

// Classical Karmarkar flow on the open simplex and its embedding into the
// diagonal density matrices.

#include "qisflow/gradient.hpp"
#include "qisflow/qis_core.hpp"

namespace qisflow {

inline constexpr double kSimplexSumTol = 1e-12;

/// Point of the open simplex: positive entries summing to one.
class SimplexPoint {
public:
    explicit SimplexPoint(RVector x);

    static SimplexPoint barycenter(Index m);

    const RVector& values() const { return x_; }
    Index dim() const { return x_.size(); }
    double operator[](Index j) const { return x_(j); }

private:
    RVector x_;
};

/// Tangent vector of the simplex: entries summing to zero.
class SimplexTangent {
public:
    explicit SimplexTangent(RVector u);

    static SimplexTangent zero(Index m) { return SimplexTangent(RVector::Zero(m)); }

    const RVector& values() const { return u_; }
    Index dim() const { return u_.size(); }
    double operator[](Index j) const { return u_(j); }

private:
    RVector u_;
};

/// sum_j u_j u2_j / x_j
double simplex_metric(const SimplexPoint& x, const SimplexTangent& u, const SimplexTangent& u2);

/// kappa(x) = x^T C x / 2
double potential_kappa(const SimplexPoint& x, const CostSpec& c);

/// (grad kappa)_j = c_j x_j^2 - x_j sum_k c_k x_k^2
SimplexTangent grad_kappa(const SimplexPoint& x, const CostSpec& c);

/// dx/dt = -grad kappa
SimplexTangent karmarkar_field(const SimplexPoint& x, const CostSpec& c);

/// The field polynomial on any real vector, including boundary points of
/// the closed simplex. No validation besides the dimension.
RVector karmarkar_vector_field(const RVector& x, const CostSpec& c);

/// x -> diag(x)
DensityState embed_mu(const SimplexPoint& x);

/// u -> diag(u), the differential of embed_mu.
TangentState pushforward_mu(const SimplexTangent& u);

struct IsometryPair {
    double embedded;  // d_metric at embed_mu(x) of the pushforwards
    double simplex;   // simplex_metric at x
};

IsometryPair check_isometry(const SimplexPoint& x, const SimplexTangent& u, const SimplexTangent& u2);

}  // namespace qisflow

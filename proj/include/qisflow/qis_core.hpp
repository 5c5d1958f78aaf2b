#pragma once

// State space of the quantum information space: regular density matrices,
// their traceless Hermitian tangent vectors, the symmetric logarithmic
// derivative and the SLD Fisher metric.

#include <complex>

#include <Eigen/Dense>

#include "qisflow/errors.hpp"

namespace qisflow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kDefaultPositivityFloor = 1e-12;

/// Largest entrywise deviation |A(j,k) - conj(A(k,j))|.
double hermitian_defect(const CMatrix& a);

/// (A + A^dagger) / 2.
CMatrix hermitian_part(const CMatrix& a);

/// A regular density matrix: Hermitian, unit trace, positive definite.
///
/// The constructor accepts a matrix that is Hermitian up to kHermitianTol
/// and stores its exact Hermitian part. Trace and positivity are checked,
/// never repaired.
class DensityState {
public:
    explicit DensityState(const CMatrix& entries,
                          double positivity_floor = kDefaultPositivityFloor);

    static DensityState maximally_mixed(Index m);
    static DensityState diagonal(const RVector& weights,
                                 double positivity_floor = kDefaultPositivityFloor);

    const CMatrix& matrix() const { return rho_; }
    Index dim() const { return rho_.rows(); }
    Complex operator()(Index j, Index k) const { return rho_(j, k); }

private:
    CMatrix rho_;
};

/// A tangent vector at a point of the space: traceless Hermitian matrix.
class TangentState {
public:
    explicit TangentState(const CMatrix& entries);

    static TangentState zero(Index m);
    static TangentState diagonal(const RVector& entries);

    const CMatrix& matrix() const { return xi_; }
    Index dim() const { return xi_.rows(); }
    Complex operator()(Index j, Index k) const { return xi_(j, k); }

    TangentState operator-() const { return TangentState(Raw{}, -xi_); }
    friend TangentState operator+(const TangentState& a, const TangentState& b);
    friend TangentState operator*(double s, const TangentState& a);

private:
    struct Raw {};
    TangentState(Raw, CMatrix entries) : xi_(std::move(entries)) {}

    CMatrix xi_;
};

/// rho = h diag(theta) h^dagger with theta ascending.
struct SpectralDecomp {
    CMatrix h;
    RVector theta;
};

SpectralDecomp spectral_decompose(const DensityState& rho,
                                  double positivity_floor = kDefaultPositivityFloor);

/// Symmetric logarithmic derivative L solving (rho L + L rho)/2 = xi.
CMatrix sld(const DensityState& rho, const TangentState& xi);

/// SLD Fisher metric, evaluated in the eigenbasis of rho.
double qf_metric(const DensityState& rho, const TangentState& xi, const TangentState& xi2);

/// Same as qf_metric, with a precomputed eigendecomposition of rho.
double qf_metric(const SpectralDecomp& spec, const TangentState& xi, const TangentState& xi2);

/// Restriction of the SLD Fisher metric to the diagonal submanifold.
/// All three arguments must be diagonal.
double d_metric(const DensityState& theta, const TangentState& z, const TangentState& z2);

bool is_diagonal(const CMatrix& a, double tol = 0.0);

}  // namespace qisflow

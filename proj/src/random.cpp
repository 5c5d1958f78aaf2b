#include "qisflow/random.hpp"

#include <algorithm>
#include <cmath>

namespace qisflow {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

double Sampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

CMatrix Sampler::gaussian(Index rows, Index cols) {
    CMatrix g(rows, cols);
    for (Index k = 0; k < cols; ++k)
        for (Index j = 0; j < rows; ++j) g(j, k) = Complex(normal(), normal());
    return g;
}

CMatrix Sampler::unitary(Index k) {
    Eigen::HouseholderQR<CMatrix> qr(gaussian(k, k));
    CMatrix q = qr.householderQ() * CMatrix::Identity(k, k);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so that Q is Haar distributed.
    for (Index j = 0; j < k; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

CMatrix Sampler::anti_hermitian(Index k) {
    const CMatrix g = gaussian(k, k);
    return 0.5 * (g - g.adjoint());
}

DensityState Sampler::density(Index m, double mix) {
    const CMatrix g = gaussian(m, m);
    CMatrix w = g * g.adjoint();
    w /= w.trace().real();
    CMatrix rho = (1.0 - mix) * w + (mix / static_cast<double>(m)) * CMatrix::Identity(m, m);
    rho = hermitian_part(rho);
    rho /= rho.trace().real();
    return DensityState(rho);
}

TangentState Sampler::tangent(Index m) {
    const CMatrix g = gaussian(m, m);
    CMatrix xi = 0.5 * (g + g.adjoint());
    xi -= (xi.trace() / static_cast<double>(m)) * CMatrix::Identity(m, m);
    return TangentState(xi);
}

SimplexPoint Sampler::simplex_point(Index m, double mix) {
    RVector x(m);
    for (Index j = 0; j < m; ++j) x(j) = std::exponential_distribution<double>(1.0)(rng_);
    x /= x.sum();
    x = (1.0 - mix) * x + RVector::Constant(m, mix / static_cast<double>(m));
    x /= x.sum();
    return SimplexPoint(x);
}

SimplexTangent Sampler::simplex_tangent(Index m) {
    RVector u(m);
    for (Index j = 0; j < m; ++j) u(j) = normal();
    u.array() -= u.mean();
    return SimplexTangent(u);
}

CostSpec Sampler::cost(Index m, double lo, double hi, bool distinct, double min_gap) {
    for (;;) {
        RVector c(m);
        for (Index j = 0; j < m; ++j) {
            do {
                c(j) = uniform(lo, hi);
            } while (c(j) == 0.0);
        }
        if (!distinct || m < 2) return CostSpec(c);
        RVector sorted = c;
        std::sort(sorted.begin(), sorted.end());
        bool ok = true;
        for (Index j = 1; j < m; ++j) ok = ok && (sorted(j) - sorted(j - 1) >= min_gap);
        if (ok) return CostSpec(c);
    }
}

}  // namespace qisflow

#include "qisflow/simplex.hpp"

#include <cmath>
#include <sstream>

namespace qisflow {

namespace {

void require_dims(Index a, Index b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw ContractError(os.str());
    }
}

}  // namespace

SimplexPoint::SimplexPoint(RVector x) : x_(std::move(x)) {
    if (x_.size() == 0) throw ContractError("SimplexPoint: empty vector");
    if (!x_.allFinite()) throw ContractError("SimplexPoint: non-finite entries");
    const double sum = x_.sum();
    if (std::abs(sum - 1.0) > kSimplexSumTol) {
        std::ostringstream os;
        os.precision(17);
        os << "SimplexPoint: entries sum to " << sum << ", expected 1";
        throw ContractError(os.str());
    }
    for (Index j = 0; j < x_.size(); ++j) {
        if (!(x_(j) > 0.0)) {
            std::ostringstream os;
            os << "SimplexPoint: entry " << j << " is " << x_(j) << ", must be positive";
            throw RegularityError(os.str());
        }
    }
}

SimplexPoint SimplexPoint::barycenter(Index m) {
    if (m <= 0) throw ContractError("SimplexPoint::barycenter: dimension must be positive");
    return SimplexPoint(RVector::Constant(m, 1.0 / static_cast<double>(m)));
}

SimplexTangent::SimplexTangent(RVector u) : u_(std::move(u)) {
    if (u_.size() == 0) throw ContractError("SimplexTangent: empty vector");
    if (!u_.allFinite()) throw ContractError("SimplexTangent: non-finite entries");
    const double sum = u_.sum();
    if (std::abs(sum) > kSimplexSumTol) {
        std::ostringstream os;
        os << "SimplexTangent: entries sum to " << sum << ", expected 0";
        throw ContractError(os.str());
    }
}

double simplex_metric(const SimplexPoint& x, const SimplexTangent& u, const SimplexTangent& u2) {
    require_dims(x.dim(), u.dim(), "simplex_metric");
    require_dims(x.dim(), u2.dim(), "simplex_metric");
    double sum = 0.0;
    for (Index j = 0; j < x.dim(); ++j) sum += u[j] * u2[j] / x[j];
    return sum;
}

double potential_kappa(const SimplexPoint& x, const CostSpec& c) {
    require_dims(x.dim(), c.dim(), "potential_kappa");
    double sum = 0.0;
    for (Index j = 0; j < x.dim(); ++j) sum += c[j] * x[j] * x[j];
    return 0.5 * sum;
}

RVector karmarkar_vector_field(const RVector& x, const CostSpec& c) {
    require_dims(x.size(), c.dim(), "karmarkar_vector_field");
    const RVector cx2 = c.values().cwiseProduct(x).cwiseProduct(x);
    const double s = cx2.sum();
    return -cx2 + s * x;
}

SimplexTangent grad_kappa(const SimplexPoint& x, const CostSpec& c) {
    RVector g = -karmarkar_vector_field(x.values(), c);
    // The components sum to (1 - sum x) * sum c_k x_k^2 which is zero up to
    // rounding; remove the residue so the result is an exact tangent.
    g.array() -= g.sum() / static_cast<double>(g.size());
    return SimplexTangent(std::move(g));
}

SimplexTangent karmarkar_field(const SimplexPoint& x, const CostSpec& c) {
    return SimplexTangent(-grad_kappa(x, c).values());
}

DensityState embed_mu(const SimplexPoint& x) { return DensityState::diagonal(x.values(), 0.0); }

TangentState pushforward_mu(const SimplexTangent& u) { return TangentState::diagonal(u.values()); }

IsometryPair check_isometry(const SimplexPoint& x, const SimplexTangent& u, const SimplexTangent& u2) {
    const DensityState rho = embed_mu(x);
    return IsometryPair{d_metric(rho, pushforward_mu(u), pushforward_mu(u2)), simplex_metric(x, u, u2)};
}

}  // namespace qisflow

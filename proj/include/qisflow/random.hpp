#pragma once

#include <cstdint>
#include <random>

#include "qisflow/gradient.hpp"
#include "qisflow/qis_core.hpp"
#include "qisflow/simplex.hpp"

namespace qisflow {

/// Seeded generator of random states, tangents and costs. Deterministic for
/// a given seed on a given standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    double normal();
    int integer(int lo, int hi);  // inclusive

    /// Complex Ginibre matrix with standard normal real and imaginary parts.
    CMatrix gaussian(Index rows, Index cols);
    /// Haar-distributed unitary.
    CMatrix unitary(Index k);
    CMatrix anti_hermitian(Index k);

    /// Normalized Wishart matrix mixed with I/m so that every eigenvalue is
    /// at least mix/m.
    DensityState density(Index m, double mix = 0.1);
    TangentState tangent(Index m);

    SimplexPoint simplex_point(Index m, double mix = 0.05);
    SimplexTangent simplex_tangent(Index m);

    /// Costs uniform in [lo, hi]; with distinct = true, entries are kept at
    /// least min_gap apart.
    CostSpec cost(Index m, double lo, double hi, bool distinct = false, double min_gap = 1e-3);

private:
    std::mt19937_64 rng_;
};

}  // namespace qisflow

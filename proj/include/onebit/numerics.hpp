#pragma once

#include <stdexcept>
#include <vector>

#include "onebit/cmat.hpp"
#include "onebit/rng.hpp"

namespace onebit {

// Thrown when the SVD sweep cap is exhausted before convergence.
struct SvdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thin SVD A = left * diag(singular_values) * right^*, with k = min(m, n),
// singular values sorted non-increasing and both factor blocks orthonormal.
struct SvdFactors {
    CMat left;
    std::vector<double> singular_values;
    CMat right;
};

// One-sided Jacobi. Accuracy is the contract: reconstruction to ~1e-14
// relative, factors orthonormal to the same level.
SvdFactors svd(const CMat& a, int max_sweeps = 40);

double nuclear_norm_of(const SvdFactors& f);

struct TopSingularPair {
    std::vector<cplx> u;
    double sigma = 0.0;
    std::vector<cplx> v;
    int iterations = 0;
    double achieved_tol = 0.0;
};

// Leading singular triplet by power iteration on A^*A; deterministic start
// vector from rng, one restart if the iteration stalls on an unlucky start.
TopSingularPair top_singular_pair(const CMat& a, double tol, int max_iter, Rng& rng);

// Euclidean projection of d onto {p : sum p = beta, p >= 0} (sort-based,
// exact up to rounding).
std::vector<double> project_simplex(const std::vector<double>& d, double beta);

// Ball: singular values projected only when sum(d) exceeds beta (identity on
// interior points). Sphere: always projected onto the equality simplex, which
// inflates interior iterates onto the boundary.
enum class ProjectionSet { Ball, Sphere };

CMat project_nuclear_ball(const CMat& z, double beta,
                          ProjectionSet set = ProjectionSet::Ball);

}  // namespace onebit

#include "onebit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "onebit/kernels.hpp"

namespace onebit {

namespace {

// Column-major interleaved (re, im) working storage for the Jacobi sweep.
struct ColMajor {
    std::size_t rows;
    std::size_t cols;
    std::vector<double> d;  // 2 * rows * cols

    ColMajor(std::size_t r, std::size_t c) : rows(r), cols(c), d(2 * r * c, 0.0) {}

    double* col(std::size_t j) { return d.data() + 2 * rows * j; }
    const double* col(std::size_t j) const { return d.data() + 2 * rows * j; }
};

ColMajor to_col_major(const CMat& a) {
    ColMajor out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double* c = out.col(j);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            c[2 * i] = a(i, j).real();
            c[2 * i + 1] = a(i, j).imag();
        }
    }
    return out;
}

// Jacobi drives columns of A to mutual orthogonality; V accumulates the
// applied right rotations, so A_in = (A/sigma) * diag(sigma) * V^*.
SvdFactors svd_tall(const CMat& a, int max_sweeps) {
    const std::size_t m = a.rows(), n = a.cols();
    ColMajor work = to_col_major(a);
    ColMajor v(n, n);
    for (std::size_t j = 0; j < n; ++j) v.col(j)[2 * j] = 1.0;

    const double tol = 1e-14;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = kernels::norm2sq(work.col(p), m);
                const double beta = kernels::norm2sq(work.col(q), m);
                const kernels::CDot g = kernels::cdotc(work.col(p), work.col(q), m);
                const double gabs = std::hypot(g.re, g.im);
                if (alpha == 0.0 || beta == 0.0) continue;
                if (gabs <= tol * std::sqrt(alpha * beta) || gabs < 1e-300) continue;
                converged = false;
                const double wr = g.re / gabs;   // w = conj(g)/|g| rotates the
                const double wi = -g.im / gabs;  // pair Gram entry onto the reals
                const double tau = (beta - alpha) / (2.0 * gabs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                kernels::rotate_cols(work.col(p), work.col(q), c, s, wr, wi, m);
                kernels::rotate_cols(v.col(p), v.col(q), c, s, wr, wi, n);
            }
        }
    }
    if (!converged) throw SvdError("svd: Jacobi sweeps did not converge");

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(kernels::norm2sq(work.col(j), m));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&sigma](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    SvdFactors f;
    f.left = CMat(m, n);
    f.right = CMat(n, n);
    f.singular_values.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t src = order[jj];
        f.singular_values[jj] = sigma[src];
        const double* vc = v.col(src);
        for (std::size_t i = 0; i < n; ++i) f.right(i, jj) = {vc[2 * i], vc[2 * i + 1]};
        if (sigma[src] > 0.0) {
            const double inv = 1.0 / sigma[src];
            const double* wc = work.col(src);
            for (std::size_t i = 0; i < m; ++i)
                f.left(i, jj) = {wc[2 * i] * inv, wc[2 * i + 1] * inv};
        }
    }

    // Orthonormal completion for exactly-zero singular values.
    for (std::size_t jj = 0; jj < n; ++jj) {
        if (f.singular_values[jj] > 0.0) continue;
        for (std::size_t basis = 0; basis < m; ++basis) {
            std::vector<cplx> cand(m, cplx{0.0, 0.0});
            cand[basis] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == jj) continue;
                    cplx proj{0.0, 0.0};
                    for (std::size_t i = 0; i < m; ++i) proj += std::conj(f.left(i, k)) * cand[i];
                    for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * f.left(i, k);
                }
            }
            double nrm = 0.0;
            for (const cplx& cval : cand) nrm += std::norm(cval);
            nrm = std::sqrt(nrm);
            if (nrm > 0.5) {
                for (std::size_t i = 0; i < m; ++i) f.left(i, jj) = cand[i] / nrm;
                break;
            }
        }
    }
    return f;
}

}  // namespace

SvdFactors svd(const CMat& a, int max_sweeps) {
    if (!a.all_finite()) throw std::invalid_argument("svd: non-finite input");
    if (a.rows() >= a.cols()) return svd_tall(a, max_sweeps);
    // wide: factor the adjoint and swap the sides
    SvdFactors f = svd_tall(a.adjoint(), max_sweeps);
    std::swap(f.left, f.right);
    return f;
}

double nuclear_norm_of(const SvdFactors& f) {
    double s = 0.0;
    for (double v : f.singular_values) s += v;
    return s;
}

TopSingularPair top_singular_pair(const CMat& a, double tol, int max_iter, Rng& rng) {
    const std::size_t m = a.rows(), n = a.cols();
    if (a.frobenius_norm() == 0.0)
        throw std::invalid_argument("top_singular_pair: zero matrix");

    // interleaved views of the rows of a
    const double* adata = reinterpret_cast<const double*>(a.data());

    auto fresh_v = [&rng, n]() {
        std::vector<double> v(2 * n);
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto [re, im] = rng.gaussian_pair();
            v[2 * i] = re;
            v[2 * i + 1] = im;
            nrm += re * re + im * im;
        }
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
        return v;
    };

    std::vector<double> v = fresh_v(), u(2 * m), vn(2 * n);
    TopSingularPair out;
    double sigma_prev = 0.0;
    bool restarted = false;
    int it = 0;
    while (true) {
        ++it;
        // u_raw = A v   (rows of A are contiguous)
        for (std::size_t i = 0; i < m; ++i) {
            const kernels::CDot d = kernels::cdotu(adata + 2 * n * i, v.data(), n);
            u[2 * i] = d.re;
            u[2 * i + 1] = d.im;
        }
        const double sigma = std::sqrt(kernels::norm2sq(u.data(), m));
        if (sigma == 0.0) {
            if (!restarted) {  // unlucky start orthogonal to the range
                restarted = true;
                v = fresh_v();
                sigma_prev = 0.0;
                continue;
            }
            throw std::invalid_argument("top_singular_pair: iteration collapsed to zero");
        }
        out.achieved_tol = std::fabs(sigma - sigma_prev) / sigma;
        sigma_prev = sigma;
        if (it > 1 && out.achieved_tol <= tol) break;
        if (it >= max_iter) break;  // near-tied leading values; achieved_tol reports the gap
        // v_next = A^* u / |.|, accumulated row by row
        std::fill(vn.begin(), vn.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            kernels::caxpy_conjx(u[2 * i], u[2 * i + 1], adata + 2 * n * i, vn.data(), n);
        const double vnrm = std::sqrt(kernels::norm2sq(vn.data(), n));
        if (vnrm == 0.0) throw std::invalid_argument("top_singular_pair: A^*u vanished");
        for (std::size_t k = 0; k < 2 * n; ++k) v[k] = vn[k] / vnrm;
    }

    out.sigma = sigma_prev;
    out.iterations = it;
    out.u.resize(m);
    out.v.resize(n);
    const double inv = 1.0 / sigma_prev;
    for (std::size_t i = 0; i < m; ++i) out.u[i] = cplx{u[2 * i] * inv, u[2 * i + 1] * inv};
    for (std::size_t k = 0; k < n; ++k) out.v[k] = cplx{v[2 * k], v[2 * k + 1]};
    return out;
}

std::vector<double> project_simplex(const std::vector<double>& d, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("project_simplex: beta must be positive");
    const std::size_t n = d.size();
    std::vector<double> sorted(d);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumsum = 0.0, tau = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cumsum += sorted[i];
        const double cand = (cumsum - beta) / static_cast<double>(i + 1);
        if (sorted[i] - cand > 0.0) {
            tau = cand;
            k = i + 1;
        }
    }
    (void)k;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(d[i] - tau, 0.0);
    return out;
}

CMat project_nuclear_ball(const CMat& z, double beta, ProjectionSet set) {
    if (!(beta > 0.0)) throw std::invalid_argument("project_nuclear_ball: beta must be positive");
    SvdFactors f = svd(z);
    const double nuc = nuclear_norm_of(f);
    if (set == ProjectionSet::Ball && nuc <= beta) return z;

    const std::vector<double> pi = project_simplex(f.singular_values, beta);
    const std::size_t m = z.rows(), n = z.cols(), k = pi.size();
    CMat out(m, n);
    for (std::size_t r = 0; r < k; ++r) {
        if (pi[r] == 0.0) continue;
        for (std::size_t i = 0; i < m; ++i) {
            const cplx ui = pi[r] * f.left(i, r);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += ui * std::conj(f.right(j, r));
        }
    }
    return out;
}

}  // namespace onebit

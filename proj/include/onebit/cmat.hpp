#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace onebit {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. The one numeric container shared by the
// whole library: channels, training blocks, pseudo-channels, gradients.
class CMat {
public:
    CMat() = default;

    // Zero matrix.
    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {
        check_shape();
    }

    // From row-major entries. Rejects non-finite values.
    CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        check_shape();
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("CMat: entry count does not match shape");
        if (!all_finite())
            throw std::invalid_argument("CMat: non-finite entry");
    }

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    cplx* data() { return entries_.data(); }
    const cplx* data() const { return entries_.data(); }

    bool all_finite() const {
        for (const cplx& v : entries_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    CMat adjoint() const {
        CMat out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    CMat transpose() const {
        CMat out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    double frobenius_norm() const {
        double acc = 0.0;
        for (const cplx& v : entries_) acc += std::norm(v);
        return std::sqrt(acc);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : entries_) m = std::max(m, std::abs(v));
        return m;
    }

    // sum over entries of conj(this) * other
    cplx inner(const CMat& other) const {
        require_same_shape(other);
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < entries_.size(); ++i)
            acc += std::conj(entries_[i]) * other.entries_[i];
        return acc;
    }

    CMat& operator+=(const CMat& other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
        return *this;
    }

    CMat& operator-=(const CMat& other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
        return *this;
    }

    CMat& operator*=(cplx a) {
        for (cplx& v : entries_) v *= a;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx a, CMat m) { return m *= a; }
    friend CMat operator*(double a, CMat m) { return m *= cplx{a, 0.0}; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("CMat: matmul shape mismatch");
        CMat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

private:
    void check_shape() const {
        if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("CMat: empty shape");
    }
    void require_same_shape(const CMat& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("CMat: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

// u v* for column vectors u (m) and v (n); result m x n.
inline CMat outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    CMat out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace onebit

#ifndef SEMICIRCLE_MATRIX_HPP
#define SEMICIRCLE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace semicircle
{

/// Gaussian integer, so that operators involving i (momentum, [X, P]) can be checked exactly.
struct gauss_int
{
    long long re = 0;
    long long im = 0;

    constexpr gauss_int() = default;
    constexpr gauss_int(long long r, long long i = 0) : re(r), im(i) {}

    constexpr gauss_int& operator+=(gauss_int o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    constexpr gauss_int& operator-=(gauss_int o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend constexpr gauss_int operator+(gauss_int a, gauss_int b) { return a += b; }
    friend constexpr gauss_int operator-(gauss_int a, gauss_int b) { return a -= b; }
    friend constexpr gauss_int operator-(gauss_int a) { return {-a.re, -a.im}; }
    friend constexpr gauss_int operator*(gauss_int a, gauss_int b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    constexpr gauss_int& operator*=(gauss_int o) { return *this = *this * o; }
    friend constexpr bool operator==(gauss_int, gauss_int) = default;

    std::complex<double> to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

/// Per-scalar hooks used by the generic matrix code.
template <typename T>
struct scalar_traits
{
    static constexpr T conj(const T& x) { return x; }
    static double abs(const T& x) { return std::abs(static_cast<double>(x)); }
};

template <typename R>
struct scalar_traits<std::complex<R>>
{
    static std::complex<R> conj(const std::complex<R>& x) { return std::conj(x); }
    static double abs(const std::complex<R>& x) { return static_cast<double>(std::abs(x)); }
    static std::complex<R> imag_unit() { return {0, 1}; }
};

template <>
struct scalar_traits<gauss_int>
{
    static constexpr gauss_int conj(gauss_int x) { return {x.re, -x.im}; }
    static double abs(gauss_int x) { return std::hypot(static_cast<double>(x.re), static_cast<double>(x.im)); }
    static constexpr gauss_int imag_unit() { return {0, 1}; }
};

template <typename T>
concept has_imag_unit = requires { scalar_traits<T>::imag_unit(); };

/// Dense row-major matrix. Products skip entries outside the operands' bands,
/// so shift and tridiagonal operators multiply in O(N * bandwidth^2).
template <typename T>
class matrix
{
public:
    using value_type = T;

    matrix() = default;
    matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    static matrix identity(std::size_t n)
    {
        matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Number of nonzero sub- and super-diagonals.
    std::size_t lower_bandwidth() const
    {
        std::size_t lo = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < std::min(i, cols_); ++j)
                if (!(data_[i * cols_ + j] == T{}))
                    lo = std::max(lo, i - j);
        return lo;
    }
    std::size_t upper_bandwidth() const
    {
        std::size_t hi = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!(data_[i * cols_ + j] == T{}))
                    hi = std::max(hi, j - i);
        return hi;
    }

    matrix adjoint() const
    {
        matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = scalar_traits<T>::conj((*this)(i, j));
        return r;
    }

    /// Sub-matrix of rows [r0, r0+nr) and columns [c0, c0+nc).
    matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw dimension_error("matrix::block out of range");
        matrix r(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    matrix& operator+=(const matrix& o)
    {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    matrix& operator-=(const matrix& o)
    {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    matrix& operator*=(const T& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend matrix operator+(matrix a, const matrix& b) { return a += b; }
    friend matrix operator-(matrix a, const matrix& b) { return a -= b; }
    friend matrix operator*(matrix a, const T& s) { return a *= s; }
    friend matrix operator*(const T& s, matrix a) { return a *= s; }

    friend matrix operator*(const matrix& a, const matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw dimension_error("matrix product: inner dimensions " + std::to_string(a.cols_) + " and " +
                                  std::to_string(b.rows_) + " differ");
        const std::size_t alo = a.lower_bandwidth(), ahi = a.upper_bandwidth();
        const std::size_t blo = b.lower_bandwidth(), bhi = b.upper_bandwidth();
        matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
        {
            const std::size_t k0 = i > alo ? i - alo : 0;
            const std::size_t k1 = std::min(a.cols_, i + ahi + 1);
            for (std::size_t k = k0; k < k1; ++k)
            {
                const T& aik = a(i, k);
                if (aik == T{})
                    continue;
                const std::size_t j0 = k > blo ? k - blo : 0;
                const std::size_t j1 = std::min(b.cols_, k + bhi + 1);
                for (std::size_t j = j0; j < j1; ++j)
                    c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != cols_)
            throw dimension_error("matrix::apply: vector length mismatch");
        std::vector<T> out(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const matrix& a, const matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Elementwise conversion, e.g. integer -> complex<double>.
    template <typename U, typename F>
    matrix<U> map(F f) const
    {
        matrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = f((*this)(i, j));
        return r;
    }

    /// Maximum absolute row sum.
    double norm_inf() const
    {
        double best = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
        {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j)
                s += scalar_traits<T>::abs((*this)(i, j));
            best = std::max(best, s);
        }
        return best;
    }

    /// Maximum absolute column sum.
    double norm_one() const { return adjoint().norm_inf(); }

private:
    void require_same_shape(const matrix& o, const char* op) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_error(std::string("matrix ") + op + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// max_{ij} |A_ij - B_ij|
template <typename T>
double max_abs_diff(const matrix<T>& a, const matrix<T>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            d = std::max(d, scalar_traits<T>::abs(a(i, j) - b(i, j)));
    return d;
}

/// Eigenvalues of the real symmetric tridiagonal matrix (diag, off) in increasing order,
/// by Sturm-sequence bisection.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag, const std::vector<double>& off)
{
    const std::size_t n = diag.size();
    if (n == 0 || off.size() + 1 != n)
        throw dimension_error("tridiagonal_eigenvalues: need n diagonal and n-1 off-diagonal entries");
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double left = i > 0 ? std::fabs(off[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::fabs(off[i]) : 0.0;
        bound = std::max(bound, std::fabs(diag[i]) + left + right);
    }
    // number of eigenvalues strictly below x
    auto count_below = [&](double x) {
        std::size_t count = 0;
        double q = diag[0] - x;
        for (std::size_t i = 0;; ++i)
        {
            if (q == 0.0)
                q = -1e-300;
            if (q < 0.0)
                ++count;
            if (i + 1 == n)
                break;
            q = diag[i + 1] - x - off[i] * off[i] / q;
        }
        return count;
    };
    std::vector<double> eig(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double lo = -bound - 1.0, hi = bound + 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (count_below(mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        eig[k] = 0.5 * (lo + hi);
    }
    return eig;
}

} // namespace semicircle

#endif

#ifndef BERGMAN_SCHUR_HPP
#define BERGMAN_SCHUR_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace bergman
{

// Dense row-major matrix over any field-like T (Rational, QComplex, double,
// std::complex<double>).
template <class T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T &operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const
    {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                b(i, j) = (*this)(i0 + i, j0 + j);
            }
        }
        return b;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        if (a.c_ != b.r_) {
            throw std::invalid_argument("Matrix: shape mismatch");
        }
        Matrix out(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i) {
            for (std::size_t k = 0; k < a.c_; ++k) {
                for (std::size_t j = 0; j < b.c_; ++j) {
                    out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix &b)
    {
        for (std::size_t k = 0; k < a.a_.size(); ++k) {
            a.a_[k] += b.a_[k];
        }
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b)
    {
        for (std::size_t k = 0; k < a.a_.size(); ++k) {
            a.a_[k] -= b.a_[k];
        }
        return a;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

namespace detail
{
template <class T>
bool is_zero_entry(const T &v)
{
    return v == T(0);
}

template <class T>
struct is_inexact : std::is_floating_point<T> {
};
template <class T>
struct is_inexact<std::complex<T>> : std::true_type {
};
} // namespace detail

// Gauss-Jordan inverse. Exact types pivot on the first non-zero entry,
// floating types on the largest magnitude. Throws on a singular matrix.
template <class T>
Matrix<T> inverse(Matrix<T> a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("inverse: matrix not square");
    }
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        if constexpr (detail::is_inexact<T>::value) {
            for (std::size_t i = col + 1; i < n; ++i) {
                if (std::abs(a(i, col)) > std::abs(a(piv, col))) {
                    piv = i;
                }
            }
            if (std::abs(a(piv, col)) == 0) {
                piv = n;
            }
        } else {
            while (piv < n && detail::is_zero_entry(a(piv, col))) {
                ++piv;
            }
        }
        if (piv == n) {
            throw std::domain_error("inverse: singular pivot block");
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        const T p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || detail::is_zero_entry(a(i, col))) {
                continue;
            }
            const T f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Top-left k x k block of M^{-1} via one Schur-complement step:
// N11 = M11^{-1} + M11^{-1} M12 (M22 - M21 M11^{-1} M12)^{-1} M21 M11^{-1}.
template <class T>
Matrix<T> schur_top_left(const Matrix<T> &m, std::size_t k)
{
    const std::size_t n = m.rows();
    if (m.cols() != n || k == 0 || k > n) {
        throw std::invalid_argument("schur_top_left: bad partition");
    }
    const Matrix<T> m11inv = inverse(m.block(0, 0, k, k));
    if (k == n) {
        return m11inv;
    }
    const Matrix<T> m12 = m.block(0, k, k, n - k);
    const Matrix<T> m21 = m.block(k, 0, n - k, k);
    const Matrix<T> m22 = m.block(k, k, n - k, n - k);
    const Matrix<T> s = inverse(m22 - m21 * m11inv * m12);
    return m11inv + m11inv * m12 * s * m21 * m11inv;
}

} // namespace bergman

#endif

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace aztec {

template <class V>
using Dense = std::vector<std::vector<V>>;

// Gaussian rationals a + b i with a, b in Q.
struct GaussRat {
    mpq_class re = 0;
    mpq_class im = 0;

    GaussRat() = default;
    GaussRat(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(int r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    mpq_class norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend GaussRat operator+(const GaussRat& x, const GaussRat& y) { return {x.re + y.re, x.im + y.im}; }
    friend GaussRat operator-(const GaussRat& x, const GaussRat& y) { return {x.re - y.re, x.im - y.im}; }
    friend GaussRat operator-(const GaussRat& x) { return {-x.re, -x.im}; }
    friend GaussRat operator*(const GaussRat& x, const GaussRat& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend GaussRat operator/(const GaussRat& x, const GaussRat& y) {
        mpq_class d = y.norm2();
        if (d == 0) throw std::domain_error("division by zero");
        GaussRat t = x * y.conj();
        return {t.re / d, t.im / d};
    }
    GaussRat& operator+=(const GaussRat& y) { return *this = *this + y; }
    GaussRat& operator-=(const GaussRat& y) { return *this = *this - y; }
    GaussRat& operator*=(const GaussRat& y) { return *this = *this * y; }
    friend bool operator==(const GaussRat& x, const GaussRat& y) { return x.re == y.re && x.im == y.im; }
};

// i^k
GaussRat i_pow(long k);
std::complex<double> i_pow_c(long k);

namespace detail {
inline bool is_zero(const mpq_class& v) { return v == 0; }
inline bool is_zero(const GaussRat& v) { return v.is_zero(); }
}  // namespace detail

// Exact Gaussian elimination for Q and Q[i].
template <class V>
V exact_det(Dense<V> A) {
    const size_t n = A.size();
    V det = V(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && detail::is_zero(A[piv][c])) ++piv;
        if (piv == n) return V(0);
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = V(0) - det;
        }
        det = det * A[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (detail::is_zero(A[r][c])) continue;
            V f = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k) A[r][k] = A[r][k] - f * A[c][k];
        }
    }
    return det;
}

template <class V>
Dense<V> exact_inverse(Dense<V> A) {
    const size_t n = A.size();
    Dense<V> I(n, std::vector<V>(n, V(0)));
    for (size_t i = 0; i < n; ++i) I[i][i] = V(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && detail::is_zero(A[piv][c])) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(A[piv], A[c]);
        std::swap(I[piv], I[c]);
        V inv = V(1) / A[c][c];
        for (size_t k = 0; k < n; ++k) {
            A[c][k] = A[c][k] * inv;
            I[c][k] = I[c][k] * inv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || detail::is_zero(A[r][c])) continue;
            V f = A[r][c];
            for (size_t k = 0; k < n; ++k) {
                A[r][k] = A[r][k] - f * A[c][k];
                I[r][k] = I[r][k] - f * I[c][k];
            }
        }
    }
    return I;
}

Dense<double> dense_inverse(const Dense<double>& A);
Dense<std::complex<double>> dense_inverse(const Dense<std::complex<double>>& A);
double dense_det(const Dense<double>& A);
std::complex<double> dense_det(const Dense<std::complex<double>>& A);

inline Dense<mpq_class> dense_inverse(const Dense<mpq_class>& A) { return exact_inverse(A); }
inline mpq_class dense_det(const Dense<mpq_class>& A) { return exact_det(A); }

}  // namespace aztec

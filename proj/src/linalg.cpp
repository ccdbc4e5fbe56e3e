#include "aztec/linalg.hpp"

#include <Eigen/Dense>

namespace aztec {

GaussRat i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

std::complex<double> i_pow_c(long k) { return i_pow(k).to_complex(); }

namespace {

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> to_eigen(const Dense<T>& A) {
    const Eigen::Index n = (Eigen::Index)A.size();
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) M(i, j) = A[i][j];
    return M;
}

template <class T>
Dense<T> from_eigen(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& M) {
    Dense<T> A(M.rows(), std::vector<T>(M.cols()));
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) A[i][j] = M(i, j);
    return A;
}

template <class T>
Dense<T> inv_impl(const Dense<T>& A) {
    if (A.empty()) return {};
    auto lu = to_eigen(A).fullPivLu();
    if (!lu.isInvertible()) throw std::domain_error("singular matrix");
    return from_eigen<T>(lu.inverse());
}

template <class T>
T det_impl(const Dense<T>& A) {
    if (A.empty()) return T(1);
    return to_eigen(A).partialPivLu().determinant();
}

}  // namespace

Dense<double> dense_inverse(const Dense<double>& A) { return inv_impl(A); }
Dense<std::complex<double>> dense_inverse(const Dense<std::complex<double>>& A) { return inv_impl(A); }
double dense_det(const Dense<double>& A) { return det_impl(A); }
std::complex<double> dense_det(const Dense<std::complex<double>>& A) { return det_impl(A); }

}  // namespace aztec

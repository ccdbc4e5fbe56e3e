#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "aztec/kernels_finite.hpp"
#include "aztec/linalg.hpp"
#include "aztec/region.hpp"

namespace aztec {

using cplx = std::complex<double>;

// Rows indexed by black id, columns by white id.
Dense<GaussRat> build_Ka_exact(const DualGraph& g);
Dense<cplx> build_Ka(const DualGraph& g);
GaussRat kasteleyn_entry(KCoord b, KCoord w, const mpq_class& a);

// A unit face is the 4-cycle of squares around an interior lattice corner.
struct Face {
    KCoord corner;
    int b[2];
    int w[2];
};
std::vector<Face> faces(const DualGraph& g);

// Largest deviation of K(b0,w0)K(b1,w1) / (K(b0,w1)K(b1,w0)) from the negative real axis
// (imaginary part plus positive real part), over all faces.
double face_condition_violation(const DualGraph& g, const Dense<cplx>& Ka);

// Ratio between |det K_a| and the weighted tiling sum; measured once by enumeration.
inline const mpq_class kGaugeNormalization = 1;

mpq_class partition_function_exact(const Dense<GaussRat>& Ka);
double partition_function(const Dense<cplx>& Ka);

// K_a^{-1}, rows indexed by white id, columns by black id.
Dense<cplx> inverse_solve(const Dense<cplx>& Ka);

enum class InversePath { Kernel, EynardMehta };

// Sign factor s(w,b) with K^{-1}(w,b) = s(w,b) K_{n,rho}(...)
GaussRat inverse_phase(KCoord w, KCoord b);
Dense<cplx> inverse_formula(const DualGraph& g, const FiniteKernels& fk,
                            InversePath path = InversePath::Kernel);
Dense<GaussRat> inverse_formula_exact(const DualGraph& g, const ExactKernels& fk);

struct KEdge {
    int black;
    int white;
};
// det[ K(b_i, w_i) K^{-1}(w_i, b_j) ]
double dimer_correlation(const std::vector<KEdge>& edges, const Dense<cplx>& Ka, const Dense<cplx>& Kinv);

struct IdentityReport {
    std::map<BoundaryClass, double> max_residual;
    std::map<BoundaryClass, int> rows;
    bool passed = false;
    BoundaryClass first_fail_class = BoundaryClass::Interior;
    KCoord first_fail_black{};
    KCoord first_fail_black_column{};
};
// Rows of K_a . C = I grouped by boundary class of the row's black vertex.
IdentityReport verify_identity_cases(const DualGraph& g, const Dense<cplx>& Ka, const Dense<cplx>& C,
                                     double tol);

}  // namespace aztec

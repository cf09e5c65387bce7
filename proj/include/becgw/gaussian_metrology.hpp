#pragma once

#include <complex>
#include <functional>

#include "becgw/errors.hpp"
#include "becgw/mode_dynamics.hpp"

namespace becgw {

/// Squeezing magnitude and angle of a single-mode squeezed vacuum.
struct SqueezeParams {
    double r;    ///< squeezing parameter, >= 0
    double phi;  ///< squeezing angle, stored in [0, 2 pi)

    SqueezeParams(double r_in, double phi_in);
};

/// 2x2 real symmetric covariance matrix of a zero-mean single-mode Gaussian
/// state. Convention: vacuum = diag(1/2, 1/2); pure states have det = 1/4.
struct CovMatrix2 {
    double s11 = 0.5;
    double s12 = 0.0;
    double s22 = 0.5;

    static CovMatrix2 vacuum() { return {0.5, 0.0, 0.5}; }

    double det() const { return s11 * s22 - s12 * s12; }
    bool positive_definite() const { return s11 > 0.0 && det() > 0.0; }
};

/// Plain 2x2 real matrix; just enough linear algebra for the mode transform.
struct Mat2 {
    double m11, m12, m21, m22;

    Mat2 operator*(const Mat2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
};

/// Quantum Fisher information per unit strain squared.
struct QfiResult {
    enum class Method { Perturbative, FiniteDifference };
    double h_eps = 0.0;
    Method method = Method::Perturbative;
    double d_eps_used = 0.0;  ///< step of the finite-difference estimate, 0 otherwise
};

/// Decibel squeezing figure s = -10 log10(e^{-2r}) converted to r = s ln(10)/20.
double db_to_r(double s_db);

/// Covariance matrix of the squeezed vacuum |r, phi>.
CovMatrix2 squeezed_cov(const SqueezeParams& p);

/// Quadrature-basis matrix of the single-mode Bogoliubov channel
///   M = [[Re(a-b), Im(a-b)], [-Im(a+b), Re(a+b)]].
/// For the real-beta case used throughout this library the two off-diagonal
/// sign conventions found in the literature coincide.
Mat2 mode_matrix(const BogoliubovPair& b);

enum class TransformForm {
    PaperProduct,          ///< sigma' = M sigma M
    SymplecticCongruence,  ///< sigma' = M sigma M^T
};

/// Covariance matrix after the Bogoliubov channel. The two forms coincide
/// whenever M is symmetric, which holds for alpha = 1.
CovMatrix2 transform_cov(const CovMatrix2& sigma0, const BogoliubovPair& b,
                         TransformForm form = TransformForm::PaperProduct);

/// Uhlmann fidelity between two single-mode Gaussian states via the
/// determinant functionals Delta = det(sA + sB) and
/// Lambda = 4 det(sA + iJ/2) det(sB + iJ/2) = 4 (det sA - 1/4)(det sB - 1/4).
double fidelity(const CovMatrix2& a, const CovMatrix2& b);

/// Strain-expansion coefficients of the transformed covariance matrix,
///   sigma(eps) = sigma0 + sigma1 eps + sigma2 eps^2 + O(eps^3),
/// produced by exact algebra on the channel matrix (no numerical steps).
struct CovExpansion {
    CovMatrix2 sigma0;
    CovMatrix2 sigma1;
    CovMatrix2 sigma2;
};

/// Expands transform_cov around eps = 0 for beta(eps) = beta_slope * eps.
CovExpansion expand_transform_cov(const CovMatrix2& sigma0, std::complex<double> beta_slope);

/// Closed-form perturbative QFI from the expansion coefficients.
QfiResult qfi_perturbative(const CovMatrix2& sigma0, const CovMatrix2& sigma1,
                           const CovMatrix2& sigma2);

/// QFI from numerical differentiation of a covariance-matrix curve, with one
/// Richardson halving. Independent of the symbolic expansion route; the two
/// must agree, which is exercised heavily in the tests.
QfiResult qfi_finite_difference(const std::function<CovMatrix2(double)>& sigma_of_eps,
                                double d_eps = 1e-4);

/// Squeezing enhancement factor R = sinh^2(2r)(6 sin^2 phi - 2) + cosh(4r) + 1.
double r_factor(const SqueezeParams& p);

/// Maximum of R over the angle, attained at phi = pi/2: R_max = 3 cosh(4r) - 1.
double r_factor_max(double r);

}  // namespace becgw

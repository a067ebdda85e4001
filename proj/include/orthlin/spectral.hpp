#ifndef ORTHLIN_SPECTRAL_HPP
#define ORTHLIN_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "blocksym.hpp"
#include "oracle.hpp"

namespace orthlin {

/// Homogeneous eigenvalues (alpha_i, beta_i) of A x = lambda B x.
struct GeneralizedEigenvalues {
    CVector alpha;
    Vector beta;
};

using GeneralizedEigensolver = std::function<GeneralizedEigenvalues(const Matrix& a, const Matrix& b)>;

/// Default backend: Eigen's real QZ.
inline GeneralizedEigenvalues qz_eigenvalues(const Matrix& a, const Matrix& b) {
    Eigen::GeneralizedEigenSolver<Matrix> ges;
    ges.compute(a, b, false);
    require(ges.info() == Eigen::Success, ErrorKind::internal, "QZ iteration did not converge");
    return {ges.alphas(), ges.betas()};
}

struct EigenOptions {
    double infinite_threshold = 1e10;  ///< |lambda| above this counts as infinite
    double regularity_tol = 1e-12;
    bool check_regularity = true;
    bool vectors = true;
    GeneralizedEigensolver solver = qz_eigenvalues;
};

struct Eigentriple {
    Complex value{};
    bool infinite = false;
    CVector right;   ///< unit right null vector of L(value) (of X when infinite)
    CVector left;    ///< unit left null vector: left^T L(value) ~ 0
    double residual = 0.0;
};

namespace detail {

/// Unit right and left null vectors of m; index picks the idx-th smallest
/// singular triple, used when an eigenvalue repeats.
inline void null_pair(const CMatrix& m, Eigen::Index idx, CVector& right, CVector& left) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index d = m.cols();
    const Eigen::Index col = std::max<Eigen::Index>(0, d - 1 - idx);
    right = svd.matrixV().col(col);
    left = svd.matrixU().col(col).conjugate();
}

inline bool less_eig(const Eigentriple& a, const Eigentriple& b) {
    if (a.infinite != b.infinite) return !a.infinite;
    if (a.infinite) return false;
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
}

}  // namespace detail

/// All kn eigenvalues of X x + Y, finite ones sorted by (re, im), infinite
/// ones last. Eigenvectors come from the SVD of L(value) (X for infinity).
inline std::vector<Eigentriple> pencil_eigen(const Pencil& l, const EigenOptions& opt = {}) {
    if (opt.check_regularity) {
        const auto reg = sample_regularity([&](Complex z) { return l.at(z); }, static_cast<int>(l.dim()) + 1,
                                           opt.regularity_tol, 0x9e3779b9ULL);
        require(reg.regular, ErrorKind::singular,
                "pencil is singular (max relative |det| " + std::to_string(reg.relative_det) + ")");
    }
    const GeneralizedEigenvalues ge = opt.solver(-l.Y(), l.X());
    require(ge.alpha.size() == l.dim() && ge.beta.size() == l.dim(), ErrorKind::internal,
            "eigensolver returned the wrong number of eigenvalues");
    std::vector<Eigentriple> out(static_cast<std::size_t>(l.dim()));
    for (Eigen::Index i = 0; i < l.dim(); ++i) {
        auto& t = out[static_cast<std::size_t>(i)];
        const Complex a = ge.alpha(i);
        const double b = ge.beta(i);
        if (b == 0.0 || std::abs(a) > opt.infinite_threshold * std::abs(b)) {
            t.infinite = true;
        } else {
            t.value = a / b;
        }
        require(t.infinite || std::isfinite(std::abs(t.value)), ErrorKind::internal, "eigensolver returned NaN");
    }
    std::sort(out.begin(), out.end(), detail::less_eig);
    if (!opt.vectors) return out;

    const double scale = std::max(spectral_norm(l.X()), spectral_norm(l.Y()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& t = out[i];
        // position within a cluster of numerically equal eigenvalues
        Eigen::Index idx = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& s = out[j];
            if (s.infinite != t.infinite) continue;
            if (t.infinite || std::abs(s.value - t.value) <= 1e-8 * (1.0 + std::abs(t.value))) ++idx;
        }
        const CMatrix m = t.infinite ? CMatrix(l.X().cast<Complex>()) : l.at(t.value);
        detail::null_pair(m, idx, t.right, t.left);
        const double denom = t.infinite ? scale : scale * (1.0 + std::abs(t.value));
        t.residual = (m * t.right).norm() / (denom > 0 ? denom : 1.0);
    }
    return out;
}

inline Spectrum spectrum_of(const std::vector<Eigentriple>& eig) {
    Spectrum s;
    for (const auto& t : eig) {
        if (t.infinite)
            ++s.infinite_count;
        else
            s.finite.push_back(t.value);
    }
    sort_spectrum(s.finite);
    return s;
}

struct RightRecovery {
    CVector u;                  ///< unit eigenvector of P
    double kronecker_mismatch;  ///< ||w - Phi_k(a) (x) u'|| / ||w||, u' the unnormalized extract
    double residual;            ///< ||P(a) u|| / ||P(a)||  (leading coefficient when infinite)
    double backward_error;      ///< ||P(a) u|| / sum_i |phi_i(a)| ||P_i||
    bool consistent;
};

inline double matrix_2norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

/// sum_i |phi_i(a)| ||P_i||_2, or ||leading coefficient|| at infinity. Unlike
/// ||P(a)|| it does not vanish when n = 1.
inline double backward_scale(const MatrixPolynomial& p, const Eigentriple& e) {
    if (e.infinite) return matrix_2norm(leading_monomial_coefficient(p).cast<Complex>());
    const long k = p.degree();
    const CVector phi = phi_vector(p.basis(), k + 1, e.value);
    double s = 0.0;
    for (long i = 0; i <= k; ++i) s += std::abs(phi(k - i)) * matrix_2norm(p.coeff(i).cast<Complex>());
    return s;
}

/// u from a right eigenvector w = Phi_k(a) (x) u of a strong linearization in
/// M1(P). Infinite a: w = e_1 (x) u.
inline RightRecovery recover_right(const MatrixPolynomial& p, const Eigentriple& e, const CVector& w,
                                   double tol = 1e-6) {
    const auto n = p.size();
    const long k = p.degree();
    require(w.size() == k * n, ErrorKind::dimension_mismatch, "eigenvector length must be kn");
    const double wn = w.norm();
    require(wn > 0.0, ErrorKind::invalid_input, "zero eigenvector");
    CVector phi = CVector::Zero(k);
    if (e.infinite)
        phi(0) = 1.0;
    else
        phi = phi_vector(p.basis(), k, e.value);
    Eigen::Index best = 0;
    phi.cwiseAbs().maxCoeff(&best);
    CVector u = w.segment(best * n, n) / phi(best);
    CVector model(k * n);
    for (long r = 0; r < k; ++r) model.segment(r * n, n) = phi(r) * u;
    RightRecovery out;
    out.kronecker_mismatch = (w - model).norm() / wn;
    out.u = u / u.norm();
    const CMatrix pa = e.infinite ? CMatrix(leading_monomial_coefficient(p).cast<Complex>()) : evaluate(p, e.value);
    const double pn = matrix_2norm(pa);
    const double bs = backward_scale(p, e);
    out.residual = (pa * out.u).norm() / (pn > 0 ? pn : 1.0);
    out.backward_error = (pa * out.u).norm() / (bs > 0 ? bs : 1.0);
    out.consistent = out.kronecker_mismatch <= tol;
    return out;
}

/// w = sum_i v_i u_i, i.e. w^T = u^T (v (x) I_n).
inline CVector recover_left(const Vector& v, const CVector& u) {
    const auto k = v.size();
    require(k >= 1 && u.size() % k == 0, ErrorKind::dimension_mismatch, "left eigenvector length must be a multiple of k");
    const auto n = u.size() / k;
    CVector w = CVector::Zero(n);
    for (Eigen::Index i = 0; i < k; ++i) w += v(i) * u.segment(i * n, n);
    return w;
}

/// ||w^T P(a)|| / (||w|| ||P(a)||); leading monomial coefficient when infinite.
inline double left_residual(const MatrixPolynomial& p, const Eigentriple& e, const CVector& w) {
    const CMatrix pa = e.infinite ? CMatrix(leading_monomial_coefficient(p).cast<Complex>()) : evaluate(p, e.value);
    const double pn = matrix_2norm(pa);
    const double wn = w.norm();
    if (wn == 0.0) return std::numeric_limits<double>::infinity();
    return (w.transpose() * pa).norm() / (wn * (pn > 0 ? pn : 1.0));
}

/// ||w^T P(a)|| / (||w|| backward_scale).
inline double left_backward_error(const MatrixPolynomial& p, const Eigentriple& e, const CVector& w) {
    const CMatrix pa = e.infinite ? CMatrix(leading_monomial_coefficient(p).cast<Complex>()) : evaluate(p, e.value);
    const double bs = backward_scale(p, e);
    const double wn = w.norm();
    if (wn == 0.0) return std::numeric_limits<double>::infinity();
    return (w.transpose() * pa).norm() / (wn * (bs > 0 ? bs : 1.0));
}

struct ExclusionVerdict {
    bool pass = true;
    double worst = std::numeric_limits<double>::infinity();  ///< smallest sigma_min((v^T (x) I) N)
    std::optional<Eigentriple> witness_eigenvalue;
    CVector witness;  ///< null vector with (v^T (x) I) witness ~ 0
};

namespace detail {

/// Columns spanning the numerical null space of m (left: conjugated U columns
/// so that u^T m ~ 0). At least one column is returned.
inline CMatrix null_basis(const CMatrix& m, bool left, double rel) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Eigen::Index d = s.size();
    const double cut = rel * (d > 0 ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < d && s(rank) > cut) ++rank;
    rank = std::min(rank, d - 1);
    const Eigen::Index dim = d - rank;
    return left ? CMatrix(svd.matrixU().rightCols(dim).conjugate()) : CMatrix(svd.matrixV().rightCols(dim));
}

}  // namespace detail

/// Eigenvector exclusion for L with ansatz vector v. Side M1: every left
/// eigenvector u must satisfy u^T (v (x) I) != 0. Side M2: every right
/// eigenvector u must satisfy (v^T (x) I) u != 0. Eigenvalues of P are taken
/// from the anchor pencil. Linear combinations within a null space are
/// covered by requiring (v^T (x) I) N to have full column rank.
inline ExclusionVerdict exclusion(const Pencil& l, const Vector& v, const MatrixPolynomial& p, Side side,
                                  double tol = 1e-8, double null_rel = 1e-9) {
    const auto n = p.size();
    const long k = p.degree();
    require(l.block_size() == n && l.blocks() == k && v.size() == k, ErrorKind::dimension_mismatch,
            "pencil, ansatz vector and P disagree in size");
    EigenOptions opt;
    opt.vectors = false;
    const auto eig = pencil_eigen(anchor(p), opt);
    const CMatrix vi = kron(v, Matrix::Identity(n, n)).transpose().cast<Complex>();
    ExclusionVerdict out;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        const auto& e = eig[i];
        if (i > 0) {
            const auto& prev = eig[i - 1];
            if (prev.infinite == e.infinite && (e.infinite || std::abs(prev.value - e.value) <= 1e-8 * (1.0 + std::abs(e.value))))
                continue;
        }
        const CMatrix m = e.infinite ? CMatrix(l.X().cast<Complex>()) : l.at(e.value);
        const CMatrix nb = detail::null_basis(m, side == Side::M1, null_rel);
        const CMatrix kmat = vi * nb;  // n x dim
        double smin = 0.0;
        if (nb.cols() <= n) {
            Eigen::JacobiSVD<CMatrix> svd(kmat, Eigen::ComputeFullV);
            smin = svd.singularValues()(nb.cols() - 1);
            if (smin <= tol && out.pass) out.witness = nb * svd.matrixV().col(nb.cols() - 1);
        } else {
            Eigen::FullPivLU<CMatrix> lu(kmat);
            const CMatrix ker = lu.kernel();
            if (out.pass) out.witness = nb * ker.col(0).normalized();
        }
        if (smin < out.worst) {
            out.worst = smin;
            out.witness_eigenvalue = e;
        }
        if (smin <= tol) out.pass = false;
    }
    return out;
}

struct EigenvalueExclusion {
    bool excluded = false;
    ScalarPoly poly;                 ///< Phi_k(x)^T v in the monomial basis
    std::vector<Complex> roots;
    double min_distance = std::numeric_limits<double>::infinity();
    double min_singular = std::numeric_limits<double>::infinity();  ///< min sigma_min(P(r)) / scale over roots r
    bool has_infinite = false;
    bool rank_test = false;          ///< DM pencil for v passes check_linearization
    bool consistent = false;         ///< rank_test implies excluded
};

/// Phi_k(x)^T v = sum_r v_r phi_{k-r}(x), monomial coefficients.
inline ScalarPoly exclusion_poly(const Basis& b, const Vector& v) {
    const long k = v.size();
    const Matrix c = to_monomial(b, k - 1);
    ScalarPoly q;
    q.c.assign(static_cast<std::size_t>(k), 0.0);
    for (long r = 1; r <= k; ++r)
        for (long m = 0; m <= k - r; ++m) q.c[static_cast<std::size_t>(m)] += v(r - 1) * c(k - r, m);
    return trim(q, 1e-14);
}

/// v is excluded when no root r of Phi_k^T v lies within tol * (1 + |a|) of a
/// finite eigenvalue a of P or makes sigma_min(P(r)) <= tol * backward_scale,
/// and v_1 != 0 whenever P has infinite eigenvalues.
inline EigenvalueExclusion eigenvalue_exclusion(const MatrixPolynomial& p, const Vector& v, double tol = 1e-8) {
    require_ansatz_degree(p);
    require(v.size() == p.degree(), ErrorKind::dimension_mismatch, "ansatz vector length must equal the degree");
    require(v.cwiseAbs().maxCoeff() > 0.0, ErrorKind::invalid_input, "ansatz vector must be nonzero");
    EigenvalueExclusion out;
    out.poly = exclusion_poly(p.basis(), v);
    if (out.poly.degree() >= 1) {
        out.roots = poly_roots(out.poly);
        sort_spectrum(out.roots);
    }
    EigenOptions opt;
    opt.vectors = false;
    const auto eig = pencil_eigen(anchor(p), opt);
    bool near = false;
    for (const auto& e : eig) {
        if (e.infinite) {
            out.has_infinite = true;
            continue;
        }
        for (const auto& r : out.roots) {
            const double d = std::abs(r - e.value);
            out.min_distance = std::min(out.min_distance, d);
            if (d <= tol * (1.0 + std::abs(e.value))) near = true;
        }
    }
    // multiple eigenvalues are only accurate to about sqrt(eps); test P at the roots too
    for (const auto& r : out.roots) {
        Eigentriple at;
        at.value = r;
        const double scale = backward_scale(p, at);
        const CMatrix pr = evaluate(p, r);
        const double smin = Eigen::JacobiSVD<CMatrix>(pr).singularValues().tail(1)(0);
        out.min_singular = std::min(out.min_singular, smin / (scale > 0 ? scale : 1.0));
        if (out.min_singular <= tol) near = true;
    }
    out.excluded = !near && !(out.has_infinite && v(0) == 0.0);
    out.rank_test = check_linearization(dm_factor(p, v)).is_strong_linearization;
    out.consistent = !out.rank_test || out.excluded;
    return out;
}

}  // namespace orthlin

#endif

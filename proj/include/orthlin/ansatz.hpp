#ifndef ORTHLIN_ANSATZ_HPP
#define ORTHLIN_ANSATZ_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>

#include "pencil.hpp"

// Pencils in the right/left ansatz spaces M1(P) and M2(P).
//
// Every L in M1(P) factors as L = [v (x) I_n  B] F(x) with F the anchor pencil
// of P, and every L in M2(P) as F(x)^B [v^T (x) I_n; B^B]. The pair (v, B)
// is stored in an AnsatzFactor together with the side it refers to.

namespace orthlin {

enum class Side { M1, M2 };

inline std::string_view to_string(Side s) { return s == Side::M1 ? "M1" : "M2"; }

inline Side side_from_string(std::string_view s) {
    if (s == "M1" || s == "m1") return Side::M1;
    if (s == "M2" || s == "m2") return Side::M2;
    throw Error(ErrorKind::invalid_input, "side must be M1 or M2");
}

struct AnsatzFactor {
    Vector v;  ///< ansatz vector, length k
    Matrix B;  ///< kn x (k-1)n
    Side side = Side::M1;

    long k() const { return static_cast<long>(v.size()); }
};

inline void check_factor_shape(const AnsatzFactor& f, Eigen::Index n) {
    const long k = f.k();
    require(k >= 2, ErrorKind::dimension_mismatch, "ansatz vector must have length k >= 2");
    require(f.B.rows() == k * n && f.B.cols() == (k - 1) * n, ErrorKind::dimension_mismatch,
            "factor B must be " + std::to_string(k * n) + " x " + std::to_string((k - 1) * n));
}

/// Block size n implied by the factor's shape.
inline Eigen::Index factor_block_size(const AnsatzFactor& f) {
    const long k = f.k();
    require(k >= 2 && f.B.cols() % (k - 1) == 0, ErrorKind::dimension_mismatch, "malformed factor");
    const Eigen::Index n = f.B.cols() / (k - 1);
    check_factor_shape(f, n);
    return n;
}

/// [v (x) I_n  B], a kn x kn matrix.
inline Matrix factor_matrix(const AnsatzFactor& f) {
    const auto n = factor_block_size(f);
    Matrix w(f.k() * n, f.k() * n);
    w << kron(f.v, Matrix::Identity(n, n)), f.B;
    return w;
}

/// L = [v (x) I_n  B] F for the anchor F of P (three-term or degree-graded).
inline Pencil make_m1(const MatrixPolynomial& p, const AnsatzFactor& f) {
    require(f.side == Side::M1, ErrorKind::invalid_input, "make_m1 expects an M1 factor");
    require_ansatz_degree(p);
    require(f.k() == p.degree(), ErrorKind::dimension_mismatch, "ansatz vector length must equal the degree");
    check_factor_shape(f, p.size());
    const Pencil a = anchor(p);
    const Matrix w = factor_matrix(f);
    return Pencil(w * a.X(), w * a.Y(), p.size(), p.degree());
}

/// L = F^B [v^T (x) I_n; B^B].
inline Pencil make_m2(const MatrixPolynomial& p, const AnsatzFactor& f) {
    require(f.side == Side::M2, ErrorKind::invalid_input, "make_m2 expects an M2 factor");
    require_ansatz_degree(p);
    require(f.k() == p.degree(), ErrorKind::dimension_mismatch, "ansatz vector length must equal the degree");
    const auto n = p.size();
    check_factor_shape(f, n);
    const Pencil a = block_transpose(anchor(p));
    Matrix right(f.k() * n, f.k() * n);
    right << kron(f.v, Matrix::Identity(n, n)).transpose(), block_transpose(f.B, n);
    return Pencil(a.X() * right, a.Y() * right, n, p.degree());
}

/// Reads (v, B) off X = [v (x) lead  B], where lead = P_k lc(phi_k)/lc(phi_{k-1}).
/// v_i is the Frobenius projection of block i of the first block column onto lead.
/// For M2 the pencil is block-transposed first. Membership is not checked here.
inline AnsatzFactor recover_factors(const Pencil& l, const MatrixPolynomial& p, Side side = Side::M1) {
    require_ansatz_degree(p);
    const auto n = p.size();
    const long k = p.degree();
    require(l.block_size() == n && l.blocks() == k, ErrorKind::dimension_mismatch,
            "pencil block structure does not match P");
    const Matrix x = side == Side::M1 ? l.X() : block_transpose(l.X(), n);
    const Matrix lead = leading_ratio(p.basis(), k) * p.coeff(k);
    const double denom = lead.squaredNorm();
    require(denom > 0.0, ErrorKind::invalid_input, "leading coefficient vanishes");
    AnsatzFactor f;
    f.side = side;
    f.v.resize(k);
    for (long i = 0; i < k; ++i) f.v(i) = block_of(x, i, 0, n).cwiseProduct(lead).sum() / denom;
    f.B = x.rightCols((k - 1) * n);
    return f;
}

struct MembershipVerdict {
    bool member = false;
    Vector v;
    double residual = 0.0;
};

/// Checks the ansatz identity at k+1 distinct points; both sides have degree
/// <= k, so agreement there certifies membership up to rounding. The residual
/// is normalized by ||P|| * ||Phi_k(x)|| at each point.
inline MembershipVerdict verify_membership(const Pencil& l, const MatrixPolynomial& p, Side side,
                                           double tol = 1e-8) {
    const AnsatzFactor f = recover_factors(l, p, side);
    const Pencil probe = side == Side::M1 ? l : block_transpose(l);
    MembershipVerdict out;
    out.v = f.v;
    const double pn = p.norm();
    for (double x : sample_points(p.degree())) {
        const double phi = phi_vector(p.basis(), p.degree(), x).norm();
        const double r = ansatz_residual_at(probe, p, f.v, x) / (pn * phi);
        out.residual = std::max(out.residual, r);
    }
    out.member = out.residual <= tol;
    return out;
}

struct LinearizationCheck {
    bool is_strong_linearization = false;
    long rank = 0;
    long deficiency = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

/// Numerical rank of [v (x) I_n  B] with the cutoff kn * eps * sigma_max. Full
/// rank means L is a strong linearization (regular or singular P); for regular
/// P a rank deficiency means L is a singular pencil. The smallest singular
/// value is reported so near-deficiency stays visible.
inline LinearizationCheck check_linearization(const AnsatzFactor& f) {
    const Matrix w = factor_matrix(f);
    Eigen::JacobiSVD<Matrix> svd(w);
    const auto& s = svd.singularValues();
    LinearizationCheck c;
    const auto d = w.rows();
    c.sigma_max = s(0);
    c.sigma_min = s(d - 1);
    const double cutoff = static_cast<double>(d) * std::numeric_limits<double>::epsilon() * c.sigma_max;
    c.rank = 0;
    if (c.sigma_max > 0.0)
        for (Eigen::Index i = 0; i < d; ++i)
            if (s(i) > cutoff) ++c.rank;
    c.deficiency = static_cast<long>(d) - c.rank;
    c.is_strong_linearization = c.deficiency == 0;
    return c;
}

/// dim M1(P) = dim M2(P) = k(k-1)n^2 + k.
inline long dimension_m(long k, long n) {
    require(k >= 2 && n >= 1, ErrorKind::invalid_input, "dimension_m needs k >= 2, n >= 1");
    return k * (k - 1) * n * n + k;
}

}  // namespace orthlin

#endif

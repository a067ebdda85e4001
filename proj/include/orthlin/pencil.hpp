#ifndef ORTHLIN_PENCIL_HPP
#define ORTHLIN_PENCIL_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "matpoly.hpp"

namespace orthlin {

/// X x + Y with no block structure attached.
struct LinearPencil {
    Matrix X;
    Matrix Y;

    CMatrix at(Complex x) const { return x * X.cast<Complex>() + Y.cast<Complex>(); }
};

/// kn x kn pencil X x + Y partitioned into k x k blocks of size n.
class Pencil {
   public:
    Pencil(Matrix x, Matrix y, Eigen::Index n, long k) : x_(std::move(x)), y_(std::move(y)), n_(n), k_(k) {
        require(n >= 1 && k >= 1, ErrorKind::invalid_input, "pencil needs n >= 1 and k >= 1");
        const Eigen::Index d = n * k;
        require(x_.rows() == d && x_.cols() == d && y_.rows() == d && y_.cols() == d,
                ErrorKind::dimension_mismatch,
                "pencil matrices must be " + std::to_string(d) + " x " + std::to_string(d));
    }

    const Matrix& X() const noexcept { return x_; }
    const Matrix& Y() const noexcept { return y_; }
    Eigen::Index block_size() const noexcept { return n_; }
    long blocks() const noexcept { return k_; }
    Eigen::Index dim() const noexcept { return n_ * k_; }

    CMatrix at(Complex x) const { return x * x_.cast<Complex>() + y_.cast<Complex>(); }

   private:
    Matrix x_, y_;
    Eigen::Index n_;
    long k_;
};

/// r x kn pencil, used for the top block row m(x) (r = n) and the
/// basis-only part M(x) (r = (k-1)n) of the anchor.
struct RowBlockPencil {
    Matrix X;
    Matrix Y;
    Eigen::Index n = 0;
    long k = 0;

    CMatrix at(Complex x) const { return x * X.cast<Complex>() + Y.cast<Complex>(); }
};

inline CMatrix eval_pencil(const Pencil& l, Complex x) { return l.at(x); }
inline CMatrix eval_pencil(const RowBlockPencil& l, Complex x) { return l.at(x); }
inline CMatrix eval_pencil(const LinearPencil& l, Complex x) { return l.at(x); }

/// rev_1(X x + Y) = Y x + X.
inline Pencil reversal_pencil(const Pencil& l) { return Pencil(l.Y(), l.X(), l.block_size(), l.blocks()); }

/// Block-transpose: block (i, j) of the result is block (j, i) of the input;
/// blocks are not transposed internally. Works for rectangular block grids.
inline Matrix block_transpose(const Matrix& a, Eigen::Index n) {
    require(n >= 1 && a.rows() % n == 0 && a.cols() % n == 0, ErrorKind::dimension_mismatch,
            "block_transpose: dimensions are not multiples of the block size");
    const Eigen::Index br = a.rows() / n, bc = a.cols() / n;
    Matrix out(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < br; ++i)
        for (Eigen::Index j = 0; j < bc; ++j) block_of(out, j, i, n) = block_of(a, i, j, n);
    return out;
}

inline Pencil block_transpose(const Pencil& l) {
    const auto n = l.block_size();
    return Pencil(block_transpose(l.X(), n), block_transpose(l.Y(), n), n, l.blocks());
}

/// Leading principal s x s part of both coefficients.
inline LinearPencil leading_principal(const Pencil& l, Eigen::Index s) {
    require(s >= 1 && s <= l.dim(), ErrorKind::dimension_mismatch, "leading_principal: size out of range");
    return {l.X().topLeftCorner(s, s), l.Y().topLeftCorner(s, s)};
}

/// k+1 Chebyshev points of [-1.5, 1.5]. Two polynomials of degree <= k that
/// agree on them are identical.
inline std::vector<double> sample_points(long k) {
    std::vector<double> pts(static_cast<std::size_t>(k) + 1);
    const double pi = 3.14159265358979323846;
    for (long j = 0; j <= k; ++j) pts[static_cast<std::size_t>(j)] = 1.5 * std::cos((2.0 * j + 1.0) * pi / (2.0 * (k + 1)));
    return pts;
}

namespace detail {

inline const ThreeTermBasis& three_term_of(const MatrixPolynomial& p, const char* who) {
    const auto* b = std::get_if<ThreeTermBasis>(&p.basis());
    require(b != nullptr, ErrorKind::invalid_input,
            std::string(who) + ": three-term basis required (use the degree-graded variant)");
    return *b;
}

inline const DegreeGradedBasis& degree_graded_of(const MatrixPolynomial& p, const char* who) {
    const auto* b = std::get_if<DegreeGradedBasis>(&p.basis());
    require(b != nullptr, ErrorKind::invalid_input, std::string(who) + ": degree-graded basis required");
    return *b;
}

inline Pencil stack(const RowBlockPencil& top, const RowBlockPencil& rest) {
    const Eigen::Index d = top.n * top.k;
    Matrix x(d, d), y(d, d);
    x << top.X, rest.X;
    y << top.Y, rest.Y;
    return Pencil(std::move(x), std::move(y), top.n, top.k);
}

}  // namespace detail

/// Top block row m(x) of the anchor for a three-term basis:
/// [ (x - b_{k-1})/a_{k-1} P_k + P_{k-1},  P_{k-2} - g_{k-1}/a_{k-1} P_k,  P_{k-3}, ..., P_0 ].
inline RowBlockPencil build_m(const MatrixPolynomial& p) {
    const auto& b = detail::three_term_of(p, "build_m");
    require_ansatz_degree(p);
    const long k = p.degree();
    const auto n = p.size();
    const double a = b.alpha(k - 1);
    RowBlockPencil m{Matrix::Zero(n, k * n), Matrix::Zero(n, k * n), n, k};
    m.X.leftCols(n) = p.coeff(k) / a;
    m.Y.leftCols(n) = -(b.beta(k - 1) / a) * p.coeff(k) + p.coeff(k - 1);
    m.Y.middleCols(n, n) = p.coeff(k - 2) - (b.gamma(k - 1) / a) * p.coeff(k);
    for (long c = 2; c < k; ++c) m.Y.middleCols(c * n, n) = p.coeff(k - 1 - c);
    return m;
}

/// M(x) = M*(x) (x) I_n, where row r (1-based) of the (k-1) x k pencil M*
/// is [-a_{k-1-r}, x - b_{k-1-r}, -g_{k-1-r}] at columns r, r+1, r+2.
inline RowBlockPencil build_M(const ThreeTermBasis& b, long k, Eigen::Index n) {
    require(k >= 2, ErrorKind::invalid_input, "build_M: degree k >= 2 required");
    require(n >= 1, ErrorKind::invalid_input, "build_M: block size must be positive");
    RowBlockPencil m{Matrix::Zero((k - 1) * n, k * n), Matrix::Zero((k - 1) * n, k * n), n, k};
    const Matrix id = Matrix::Identity(n, n);
    for (long r = 1; r <= k - 1; ++r) {
        const long j = k - 1 - r;
        const Eigen::Index row = r - 1;
        block_of(m.Y, row, r - 1, n) = -b.alpha(j) * id;
        block_of(m.X, row, r, n) = id;
        block_of(m.Y, row, r, n) = -b.beta(j) * id;
        if (r + 1 <= k - 1) block_of(m.Y, row, r + 1, n) = -b.gamma(j) * id;
    }
    return m;
}

/// Anchor pencil [m(x); M(x)] for a three-term basis. Satisfies
/// F(x)(Phi_k(x) (x) I_n) = e_1 (x) P(x) and is a strong linearization for P.
inline Pencil build_anchor(const MatrixPolynomial& p) {
    const auto& b = detail::three_term_of(p, "build_anchor");
    return detail::stack(build_m(p), build_M(b, p.degree(), p.size()));
}

/// Degree-graded top row [ (x - a_k)P_k + P_{k-1}, b_k^{k-2}P_k + P_{k-2}, ..., b_k^0 P_k + P_0 ].
inline RowBlockPencil build_m_dg(const MatrixPolynomial& p) {
    const auto& b = detail::degree_graded_of(p, "build_m_dg");
    require_ansatz_degree(p);
    const long k = p.degree();
    const auto n = p.size();
    RowBlockPencil m{Matrix::Zero(n, k * n), Matrix::Zero(n, k * n), n, k};
    m.X.leftCols(n) = p.coeff(k);
    m.Y.leftCols(n) = -b.shift(k) * p.coeff(k) + p.coeff(k - 1);
    for (long c = 1; c < k; ++c) {
        const long j = k - 1 - c;  // column c (0-based) multiplies phi_j
        m.Y.middleCols(c * n, n) = b.lower(k, j) * p.coeff(k) + p.coeff(j);
    }
    return m;
}

/// Degree-graded M(x) (x) I_n: row r (1-based) is
/// [-1, x - a_{k-r}, b_{k-r}^{k-r-2}, ..., b_{k-r}^0] starting at column r.
inline RowBlockPencil build_M_dg(const DegreeGradedBasis& b, long k, Eigen::Index n) {
    require(k >= 2, ErrorKind::invalid_input, "build_M_dg: degree k >= 2 required");
    RowBlockPencil m{Matrix::Zero((k - 1) * n, k * n), Matrix::Zero((k - 1) * n, k * n), n, k};
    const Matrix id = Matrix::Identity(n, n);
    for (long r = 1; r <= k - 1; ++r) {
        const long i = k - r;  // this row encodes the recurrence for phi_i
        const Eigen::Index row = r - 1;
        block_of(m.Y, row, r - 1, n) = -id;
        block_of(m.X, row, r, n) = id;
        block_of(m.Y, row, r, n) = -b.shift(i) * id;
        for (long j = 0; j <= i - 2; ++j) block_of(m.Y, row, k - 1 - j, n) = b.lower(i, j) * id;
    }
    return m;
}

inline Pencil build_anchor_dg(const MatrixPolynomial& p) {
    const auto& b = detail::degree_graded_of(p, "build_anchor_dg");
    return detail::stack(build_m_dg(p), build_M_dg(b, p.degree(), p.size()));
}

/// Anchor for whichever basis family P uses.
inline Pencil anchor(const MatrixPolynomial& p) {
    return is_three_term(p.basis()) ? build_anchor(p) : build_anchor_dg(p);
}

/// v (x) M for a real vector v and a matrix M.
inline Matrix kron(const Vector& v, const Matrix& m) {
    Matrix out(v.size() * m.rows(), m.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) out.middleRows(i * m.rows(), m.rows()) = v(i) * m;
    return out;
}

/// Residual of L(x)(Phi_k(x) (x) I_n) - v (x) P(x), max-abs entry.
inline double ansatz_residual_at(const Pencil& l, const MatrixPolynomial& p, const Vector& v, Complex x) {
    const auto n = p.size();
    const long k = p.degree();
    CVector phi = phi_vector(p.basis(), k, x);
    CMatrix lx = l.at(x);
    CMatrix lhs = CMatrix::Zero(k * n, n);
    for (long r = 0; r < k; ++r) lhs += phi(r) * lx.middleCols(r * n, n);
    CMatrix px = evaluate(p, x);
    CMatrix rhs(k * n, n);
    for (long i = 0; i < k; ++i) rhs.middleRows(i * n, n) = v(i) * px;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace orthlin

#endif

#ifndef ORTHLIN_BLOCKSYM_HPP
#define ORTHLIN_BLOCKSYM_HPP

#include <cstddef>
#include <vector>

#include "ansatz.hpp"

// Block-symmetric pencils in DM(P) = M1(P) n M2(P).
//
// For an ansatz vector v the factor B = [Z; B*] is fully determined: Z is the
// block row [v_2 ... v_k] (x) lead and B* is block-symmetric. Only the blocks
// B(i, j) with i > j (1-based rows of B) are computed; the rest are read
// through the symmetry map B(s, t) = B(t+1, s-1), t >= s.

namespace orthlin {

/// Operation tally for the DM construction. Every update is a scalar times an
/// n x n block added to another block; no matrix-matrix products occur.
struct BuildStats {
    std::size_t block_axpy = 0;
};

class BlockGrid {
   public:
    BlockGrid(long k, Eigen::Index n) : k_(k), n_(n), z_(static_cast<std::size_t>(k - 1)),
                                        lower_(static_cast<std::size_t>(k * (k - 1) / 2)) {
        require(k >= 2, ErrorKind::invalid_input, "BlockGrid needs k >= 2");
        for (auto& m : z_) m = Matrix::Zero(n, n);
        for (auto& m : lower_) m = Matrix::Zero(n, n);
    }

    long k() const noexcept { return k_; }
    Eigen::Index n() const noexcept { return n_; }

    /// Block (i, j) of B, 1-based: i = 1..k, j = 1..k-1.
    const Matrix& at(long i, long j) const {
        if (i == 1) return z_[static_cast<std::size_t>(j - 1)];
        if (i > j) return lower_[index(i, j)];
        return at(j + 1, i - 1);
    }

    Matrix& z(long j) { return z_[static_cast<std::size_t>(j - 1)]; }

    /// Stored block with i > j.
    Matrix& lower(long i, long j) { return lower_[index(i, j)]; }

    Matrix to_matrix() const {
        Matrix b(k_ * n_, (k_ - 1) * n_);
        for (long i = 1; i <= k_; ++i)
            for (long j = 1; j <= k_ - 1; ++j) block_of(b, i - 1, j - 1, n_) = at(i, j);
        return b;
    }

   private:
    std::size_t index(long i, long j) const {
        // rows i = j+1..k of column j, columns stacked left to right
        std::size_t off = 0;
        for (long c = 1; c < j; ++c) off += static_cast<std::size_t>(k_ - c);
        return off + static_cast<std::size_t>(i - j - 1);
    }

    long k_;
    Eigen::Index n_;
    std::vector<Matrix> z_;
    std::vector<Matrix> lower_;
};

namespace detail {

struct Axpy {
    BuildStats* stats;
    void operator()(Matrix& acc, double s, const Matrix& m) const {
        if (s == 0.0) return;
        acc.noalias() += s * m;
        if (stats) ++stats->block_axpy;
    }
};

}  // namespace detail

/// Closed-form DM construction for a three-term basis. Out-of-range terms
/// (v_{k+1}, B(k+1, .)) carry the coefficient alpha_{-1} = 0 and are skipped.
inline AnsatzFactor build_dm(const MatrixPolynomial& p, const Vector& v, BuildStats* stats = nullptr) {
    const auto& b = detail::three_term_of(p, "build_dm");
    require_ansatz_degree(p);
    const long k = p.degree();
    const auto n = p.size();
    require(v.size() == k, ErrorKind::dimension_mismatch, "ansatz vector length must equal the degree");

    const detail::Axpy axpy{stats};
    auto vv = [&](long i) { return (i >= 1 && i <= k) ? v(i - 1) : 0.0; };
    auto P = [&](long i) -> const Matrix& { return p.coeff(i); };
    auto al = [&](long j) { return b.alpha(j); };  // alpha_{-1} = 0
    auto be = [&](long j) { return b.beta(j); };
    auto ga = [&](long j) { return b.gamma(j); };
    const Matrix& pk = P(k);

    BlockGrid g(k, n);
    for (long j = 1; j <= k - 1; ++j) axpy(g.z(j), vv(j + 1) / al(k - 1), pk);

    // first column
    for (long i = 2; i <= k; ++i) {
        Matrix& out = g.lower(i, 1);
        const double c = (vv(i - 1) * ga(k - i + 1) + vv(i) * (be(k - i) - be(k - 1)) +
                          (i < k ? vv(i + 1) * al(k - i - 1) : 0.0)) /
                         (al(k - 1) * al(k - 2));
        axpy(out, c, pk);
        axpy(out, vv(i) / al(k - 2), P(k - 1));
        axpy(out, -vv(1) / al(k - 2), P(k - i));
    }

    // second column
    for (long i = 3; i <= k; ++i) {
        Matrix& out = g.lower(i, 2);
        const double d = al(k - 3);
        axpy(out, ga(k - i + 1) / d, g.at(i - 1, 1));
        axpy(out, (be(k - i) - be(k - 2)) / d, g.at(i, 1));
        if (i < k) axpy(out, al(k - i - 1) / d, g.at(i + 1, 1));
        axpy(out, vv(i) / d, P(k - 2));
        axpy(out, -vv(2) / d, P(k - i));
        axpy(out, -vv(i) * ga(k - 1) / (d * al(k - 1)), pk);
    }

    // remaining columns
    for (long j = 3; j <= k - 1; ++j) {
        const double d = al(k - j - 1);
        for (long i = j + 1; i <= k; ++i) {
            Matrix& out = g.lower(i, j);
            axpy(out, ga(k - i + 1) / d, g.at(i - 1, j - 1));
            axpy(out, (be(k - i) - be(k - j)) / d, g.at(i, j - 1));
            if (i < k) axpy(out, al(k - i - 1) / d, g.at(i + 1, j - 1));
            axpy(out, -ga(k - j + 1) / d, g.at(i, j - 2));
            axpy(out, vv(i) / d, P(k - j));
            axpy(out, -vv(j) / d, P(k - i));
        }
    }

    return AnsatzFactor{v, g.to_matrix(), Side::M1};
}

/// Generic DM construction from an anchor pencil A whose rows 2..k are
/// (scalar matrix) (x) I_n with nonzero "subdiagonal" entries and whose X has
/// the pattern diag(lead, I, ..., I). Solves the block-symmetry equations of
/// L(0) = [v (x) I  B] A(0) column by column for the blocks below the diagonal
/// of B*. Covers both three-term and degree-graded anchors.
inline AnsatzFactor solve_block_symmetric(const Pencil& a, const Vector& v, BuildStats* stats = nullptr) {
    const long k = a.blocks();
    const auto n = a.block_size();
    require(k >= 2, ErrorKind::invalid_input, "solve_block_symmetric needs k >= 2");
    require(v.size() == k, ErrorKind::dimension_mismatch, "ansatz vector length must equal the block count");

    const Matrix id = Matrix::Identity(n, n);
    // s(r, c) = scalar in block (r+1, c) of A(0), r = 1..k-1, c = 1..k
    Matrix s = Matrix::Zero(k, k + 1);
    for (long r = 1; r <= k - 1; ++r) {
        for (long c = 1; c <= k; ++c) {
            const Matrix blk = block_of(a.Y(), r, c - 1, n);
            const double sc = blk(0, 0);
            require((blk - sc * id).cwiseAbs().maxCoeff() == 0.0, ErrorKind::invalid_input,
                    "anchor rows 2..k must consist of scalar multiples of I_n");
            require(c >= r || sc == 0.0, ErrorKind::invalid_input, "anchor lower part is not block upper-Hessenberg");
            s(r, c) = sc;
        }
        require(s(r, r) != 0.0, ErrorKind::invalid_input, "anchor has a zero subdiagonal coefficient");
        const Matrix xr = a.X().middleRows(r * n, n);
        Matrix expect = Matrix::Zero(n, k * n);
        expect.middleCols(r * n, n) = id;
        require(xr == expect, ErrorKind::invalid_input, "anchor X rows 2..k must be [0 .. I .. 0]");
    }
    const Matrix lead = block_of(a.X(), 0, 0, n);
    require(a.X().topRows(n).rightCols((k - 1) * n).cwiseAbs().maxCoeff() == 0.0, ErrorKind::invalid_input,
            "anchor X must vanish in the first block row beyond column 1");

    const detail::Axpy axpy{stats};
    auto top = [&](long c) { return Matrix(block_of(a.Y(), 0, c - 1, n)); };

    BlockGrid g(k, n);
    for (long j = 1; j <= k - 1; ++j) axpy(g.z(j), v(j), lead);

    for (long j = 1; j <= k - 1; ++j) {
        for (long i = j + 1; i <= k; ++i) {
            // L(0)(i, j) = v_i A(1, j) + sum_{r <= j} s(r, j) B(i, r)
            // L(0)(j, i) = v_j A(1, i) + sum_{r <= min(i, k-1)} s(r, i) B(j, r)
            Matrix rhs = Matrix::Zero(n, n);
            axpy(rhs, v(j - 1), top(i));
            for (long r = 1; r <= std::min(i, k - 1); ++r) axpy(rhs, s(r, i), g.at(j, r));
            axpy(rhs, -v(i - 1), top(j));
            for (long r = 1; r < j; ++r) axpy(rhs, -s(r, j), g.at(i, r));
            Matrix& out = g.lower(i, j);
            axpy(out, 1.0 / s(j, j), rhs);
        }
    }
    return AnsatzFactor{v, g.to_matrix(), Side::M1};
}

struct SymmetryCheck {
    bool symmetric = false;
    double asymmetry = 0.0;  ///< max over blocks of |block(i,j) - block(j,i)|, X and Y
};

inline double block_asymmetry(const Matrix& m, Eigen::Index n) {
    const Eigen::Index kb = m.rows() / n;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < kb; ++i)
        for (Eigen::Index j = i + 1; j < kb; ++j)
            worst = std::max(worst, (block_of(m, i, j, n) - block_of(m, j, i, n)).cwiseAbs().maxCoeff());
    return worst;
}

inline SymmetryCheck is_block_symmetric(const Pencil& l, double tol = 0.0) {
    const auto n = l.block_size();
    SymmetryCheck c;
    c.asymmetry = std::max(block_asymmetry(l.X(), n), block_asymmetry(l.Y(), n));
    c.symmetric = c.asymmetry <= tol;
    return c;
}

/// DM construction for a degree-graded basis via the generic solver; the
/// result is checked for block-symmetry before it is returned.
inline AnsatzFactor build_dm_dg(const MatrixPolynomial& p, const Vector& v, BuildStats* stats = nullptr) {
    detail::degree_graded_of(p, "build_dm_dg");
    require_ansatz_degree(p);
    const Pencil a = build_anchor_dg(p);
    AnsatzFactor f = solve_block_symmetric(a, v, stats);
    const Pencil l = make_m1(p, f);
    const double scale = std::max({1.0, l.X().cwiseAbs().maxCoeff(), l.Y().cwiseAbs().maxCoeff()});
    const auto sym = is_block_symmetric(l, 1e-10 * scale);
    require(sym.symmetric, ErrorKind::internal,
            "inconsistent block-symmetry system: asymmetry " + std::to_string(sym.asymmetry));
    return f;
}

/// DM pencil factor for whichever basis family P uses.
inline AnsatzFactor dm_factor(const MatrixPolynomial& p, const Vector& v, BuildStats* stats = nullptr) {
    return is_three_term(p.basis()) ? build_dm(p, v, stats) : build_dm_dg(p, v, stats);
}

/// The DM pencil itself. Blocks on and below the block diagonal come from
/// [v (x) I  B] F; blocks above it are copies of their mirror images, so the
/// result equals its block-transpose bit for bit.
inline Pencil dm_pencil(const MatrixPolynomial& p, const AnsatzFactor& f) {
    const Pencil l = make_m1(p, f);
    const auto n = l.block_size();
    const long k = l.blocks();
    Matrix x = l.X(), y = l.Y();
    for (long i = 0; i < k; ++i)
        for (long j = i + 1; j < k; ++j) {
            block_of(x, i, j, n) = block_of(x, j, i, n);
            block_of(y, i, j, n) = block_of(y, j, i, n);
        }
    return Pencil(std::move(x), std::move(y), n, k);
}

inline Pencil dm_pencil(const MatrixPolynomial& p, const Vector& v) { return dm_pencil(p, dm_factor(p, v)); }

/// Factors of the k pencils with ansatz vectors e_1, ..., e_k; they form a
/// basis of DM(P).
inline std::vector<AnsatzFactor> dm_basis(const MatrixPolynomial& p) {
    require_ansatz_degree(p);
    std::vector<AnsatzFactor> out;
    for (long j = 0; j < p.degree(); ++j) out.push_back(dm_factor(p, Vector::Unit(p.degree(), j)));
    return out;
}

}  // namespace orthlin

#endif

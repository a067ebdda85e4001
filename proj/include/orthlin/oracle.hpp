#ifndef ORTHLIN_ORACLE_HPP
#define ORTHLIN_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <unsupported/Eigen/Polynomials>

#include "matpoly.hpp"

// Brute-force reference spectrum: det P(x) expanded in the monomial basis,
// roots from a companion matrix. Independent of the pencil code paths.

namespace orthlin {

/// Real polynomial c_0 + c_1 x + ... + c_d x^d.
struct ScalarPoly {
    std::vector<double> c;

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    Complex operator()(Complex x) const {
        Complex acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline ScalarPoly trim(ScalarPoly p, double rel_tol) {
    double mx = 0.0;
    for (double x : p.c) mx = std::max(mx, std::abs(x));
    while (!p.c.empty() && std::abs(p.c.back()) <= rel_tol * mx) p.c.pop_back();
    if (mx == 0.0) p.c.clear();
    return p;
}

namespace detail {

using Poly = std::vector<double>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline void poly_axpy(Poly& acc, double s, const Poly& a) {
    if (acc.size() < a.size()) acc.resize(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc[i] += s * a[i];
}

}  // namespace detail

struct DetPoly {
    ScalarPoly poly;        ///< trimmed; empty when det P vanishes identically
    double scale = 0.0;     ///< Hadamard-type bound for the coefficient size
    bool singular = false;
};

/// det P(x) by Laplace expansion along rows, memoized over column subsets.
inline DetPoly det_poly_full(const MatrixPolynomial& p, double rel_tol = 1e-12) {
    const auto n = p.size();
    const long k = p.degree();
    require(n <= 6 && k <= 8, ErrorKind::invalid_input, "det_poly: size guard n <= 6, k <= 8 exceeded");
    const auto a = monomial_coefficients(p);

    // entry polynomials
    std::vector<detail::Poly> e(static_cast<std::size_t>(n * n), detail::Poly(static_cast<std::size_t>(k) + 1));
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            for (long m = 0; m <= k; ++m)
                e[static_cast<std::size_t>(r * n + c)][static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(m)](r, c);

    // minor[S] = det of rows 0..|S|-1 and columns S
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<detail::Poly> minor(full + 1);
    minor[0] = {1.0};
    for (std::size_t s = 1; s <= full; ++s) {
        const int rows = __builtin_popcountll(s);
        const Eigen::Index r = rows - 1;
        detail::Poly acc;
        int pos = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (!(s & (std::size_t{1} << c))) continue;
            const double sign = ((rows - 1 - pos) % 2 == 0) ? 1.0 : -1.0;
            detail::poly_axpy(acc, sign, detail::poly_mul(e[static_cast<std::size_t>(r * n + c)], minor[s ^ (std::size_t{1} << c)]));
            ++pos;
        }
        minor[s] = std::move(acc);
    }

    DetPoly out;
    // bound on |det| coefficients: product of row norms of the stacked coefficients
    double scale = 1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
        double row = 0.0;
        for (long m = 0; m <= k; ++m) row += a[static_cast<std::size_t>(m)].row(r).squaredNorm();
        scale *= std::sqrt(row);
    }
    out.scale = scale;
    ScalarPoly raw{minor[full]};
    double mx = 0.0;
    for (double x : raw.c) mx = std::max(mx, std::abs(x));
    out.singular = !(mx > rel_tol * scale);
    out.poly = out.singular ? ScalarPoly{} : trim(raw, rel_tol);
    return out;
}

inline ScalarPoly det_poly(const MatrixPolynomial& p) { return det_poly_full(p).poly; }

/// Roots via the balanced companion matrix.
inline std::vector<Complex> poly_roots(const ScalarPoly& p) {
    require(p.degree() >= 1, ErrorKind::invalid_input, "poly_roots: degree must be at least 1");
    Eigen::VectorXd c(p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) c(static_cast<Eigen::Index>(i)) = p.c[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
    const auto& r = solver.roots();
    return std::vector<Complex>(r.data(), r.data() + r.size());
}

struct Spectrum {
    std::vector<Complex> finite;
    long infinite_count = 0;
};

inline void sort_spectrum(std::vector<Complex>& z) {
    std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
}

/// Newton refinement of a root of det P using trace(P(x)^{-1} P'(x)).
inline Complex polish_root(const std::vector<Matrix>& mono, Complex x, int iters = 3) {
    const long k = static_cast<long>(mono.size()) - 1;
    const auto n = mono[0].rows();
    for (int it = 0; it < iters; ++it) {
        CMatrix px = CMatrix::Zero(n, n), dp = CMatrix::Zero(n, n);
        for (long m = k; m >= 0; --m) {
            dp = dp * x + px;
            px = px * x + mono[static_cast<std::size_t>(m)].cast<Complex>();
        }
        Eigen::PartialPivLU<CMatrix> lu(px);
        const Complex t = (lu.solve(dp)).trace();
        if (!std::isfinite(std::abs(t)) || std::abs(t) == 0.0) break;
        const Complex step = 1.0 / t;
        if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1.0 + std::abs(x))) break;
        x -= step;
    }
    return x;
}

/// Finite eigenvalues are the roots of det P; infinite_count = kn - deg det P.
inline Spectrum reference_spectrum(const MatrixPolynomial& p, bool polish = true) {
    const DetPoly d = det_poly_full(p);
    require(!d.singular, ErrorKind::singular, "reference_spectrum: det P vanishes identically");
    Spectrum s;
    const long kn = p.degree() * static_cast<long>(p.size());
    s.infinite_count = kn - d.poly.degree();
    if (d.poly.degree() >= 1) {
        s.finite = poly_roots(d.poly);
        if (polish) {
            const auto mono = monomial_coefficients(p);
            for (auto& z : s.finite) z = polish_root(mono, z);
        }
    }
    sort_spectrum(s.finite);
    return s;
}

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
/// O(m^3)). Returns assignment row -> column.
inline std::vector<int> min_cost_assignment(const Matrix& cost) {
    const int m = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= m; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(m, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

struct SpectrumComparison {
    std::vector<std::pair<Complex, Complex>> pairs;
    double max_distance = 0.0;
    bool same_finite_count = false;
    bool same_infinite_count = false;
    bool match = false;  ///< counts equal and max_distance <= tol
};

/// Optimal bipartite matching of the finite parts on |a_i - b_j|. The
/// objective is the sum of distances; the reported figure is the largest
/// matched distance.
inline SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol) {
    SpectrumComparison out;
    out.same_finite_count = a.finite.size() == b.finite.size();
    out.same_infinite_count = a.infinite_count == b.infinite_count;
    const std::size_t m = std::max(a.finite.size(), b.finite.size());
    if (m > 0) {
        // unmatched slots are padded with a large cost
        Matrix cost = Matrix::Constant(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m), 1e6);
        for (std::size_t i = 0; i < a.finite.size(); ++i)
            for (std::size_t j = 0; j < b.finite.size(); ++j)
                cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::abs(a.finite[i] - b.finite[j]);
        const auto asg = min_cost_assignment(cost);
        for (std::size_t i = 0; i < a.finite.size(); ++i) {
            const auto j = static_cast<std::size_t>(asg[i]);
            if (j >= b.finite.size()) continue;
            out.pairs.emplace_back(a.finite[i], b.finite[j]);
            out.max_distance = std::max(out.max_distance, std::abs(a.finite[i] - b.finite[j]));
        }
    }
    if (!out.same_finite_count) out.max_distance = std::numeric_limits<double>::infinity();
    out.match = out.same_finite_count && out.same_infinite_count && out.max_distance <= tol;
    return out;
}

/// Smallest pairwise distance between finite eigenvalues.
inline double min_separation(const std::vector<Complex>& z) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) best = std::min(best, std::abs(z[i] - z[j]));
    return best;
}

}  // namespace orthlin

#endif

#ifndef ORTHLIN_MATPOLY_HPP
#define ORTHLIN_MATPOLY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "basis.hpp"

namespace orthlin {

/// P(x) = sum_{i=0}^k P_i phi_i(x) with real n x n coefficients, stored in
/// ascending order P_0 .. P_k.
class MatrixPolynomial {
   public:
    MatrixPolynomial(Basis basis, std::vector<Matrix> coeffs)
        : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
        require(coeffs_.size() >= 2, ErrorKind::invalid_input, "matrix polynomial needs degree >= 1");
        n_ = coeffs_[0].rows();
        require(n_ >= 1, ErrorKind::invalid_input, "coefficient matrices must be non-empty");
        for (const auto& c : coeffs_)
            require(c.rows() == n_ && c.cols() == n_, ErrorKind::dimension_mismatch,
                    "coefficients must all be square of the same size");
        require(coeffs_.back().cwiseAbs().maxCoeff() > 0.0, ErrorKind::invalid_input,
                "leading coefficient P_k must be nonzero");
        require(max_degree(basis_) >= static_cast<std::size_t>(degree()), ErrorKind::invalid_input,
                "basis does not supply enough recurrence coefficients for degree " +
                    std::to_string(degree()));
    }

    Eigen::Index size() const noexcept { return n_; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const Matrix& coeff(long i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    const std::vector<Matrix>& coeffs() const noexcept { return coeffs_; }
    const Basis& basis() const noexcept { return basis_; }

    /// max_i ||P_i||_F, used as the scale of P in residuals.
    double norm() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s = std::max(s, c.norm());
        return s;
    }

   private:
    Basis basis_;
    std::vector<Matrix> coeffs_;
    Eigen::Index n_ = 0;
};

inline void require_ansatz_degree(const MatrixPolynomial& p) {
    require(p.degree() >= 2, ErrorKind::invalid_input, "ansatz-space operations need degree k >= 2");
}

inline CMatrix evaluate(const MatrixPolynomial& p, Complex x) {
    auto phi = eval_phi_all<Complex>(p.basis(), p.degree(), x);
    CMatrix out = CMatrix::Zero(p.size(), p.size());
    for (long i = 0; i <= p.degree(); ++i) out += phi[static_cast<std::size_t>(i)] * p.coeff(i).cast<Complex>();
    return out;
}

/// Monomial coefficients A_0 .. A_k with P(x) = sum_m A_m x^m.
inline std::vector<Matrix> monomial_coefficients(const MatrixPolynomial& p) {
    const long k = p.degree();
    Matrix c = to_monomial(p.basis(), k);
    std::vector<Matrix> a(static_cast<std::size_t>(k) + 1, Matrix::Zero(p.size(), p.size()));
    for (long i = 0; i <= k; ++i)
        for (long m = 0; m <= i; ++m)
            if (c(i, m) != 0.0) a[static_cast<std::size_t>(m)] += c(i, m) * p.coeff(i);
    return a;
}

/// Leading monomial coefficient, i.e. rev_k P evaluated at 0.
inline Matrix leading_monomial_coefficient(const MatrixPolynomial& p) {
    const long k = p.degree();
    return to_monomial(p.basis(), k)(k, k) * p.coeff(k);
}

/// Monomial coefficients of rev_k P(x) = x^k P(1/x), ascending.
inline std::vector<Matrix> reversal_monomial(const MatrixPolynomial& p) {
    auto a = monomial_coefficients(p);
    std::reverse(a.begin(), a.end());
    return a;
}

/// Product of row 2-norms, an upper bound for |det A|.
inline double hadamard_bound(const CMatrix& a) {
    double s = 1.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) s *= a.row(r).norm();
    return s;
}

/// Uniform sample from the disk |z| <= radius.
template <class Rng>
Complex random_disk_point(Rng& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double t = 2.0 * 3.14159265358979323846 * u(rng);
    return std::polar(r, t);
}

struct RegularityVerdict {
    bool regular = false;
    Complex witness{};        ///< point with the largest relative determinant
    double relative_det = 0;  ///< |det| / Hadamard bound at the witness
};

/// Randomized regularity test: det P vanishes at no more than kn points unless
/// it vanishes identically, so one clearly nonzero sample certifies regularity.
/// The verdict is probabilistic.
template <class Eval>
RegularityVerdict sample_regularity(Eval&& eval, int trials, double tol, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RegularityVerdict v;
    for (int t = 0; t < trials; ++t) {
        const Complex z = random_disk_point(rng, 2.0);
        CMatrix m = eval(z);
        const double scale = hadamard_bound(m);
        const double rel = scale > 0 ? std::abs(m.fullPivLu().determinant()) / scale : 0.0;
        if (t == 0 || rel > v.relative_det) {
            v.relative_det = rel;
            v.witness = z;
        }
    }
    v.regular = v.relative_det > tol;
    return v;
}

inline RegularityVerdict is_regular(const MatrixPolynomial& p, int trials = -1, double tol = 1e-12,
                                    std::uint64_t seed = 0x5eed) {
    if (trials <= 0) trials = static_cast<int>(p.degree() * p.size()) + 1;
    return sample_regularity([&](Complex z) { return evaluate(p, z); }, trials, tol, seed);
}

}  // namespace orthlin

#endif

#ifndef ORTHLIN_BASIS_HPP
#define ORTHLIN_BASIS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"

// Polynomial bases given by recurrences.
//
// Two families are supported:
//
//   three-term:     alpha_j phi_{j+1} = (x - beta_j) phi_j - gamma_j phi_{j-1},  j >= 0
//   degree-graded:  phi_i = (x - a_i) phi_{i-1} + sum_{j<=i-2} b_i^j phi_j,       i >= 1
//
// with phi_{-1} = 0 and phi_0 = 1 in both cases. Evaluation uses the forward
// recurrence, which is adequate for the modest degrees (k <= ~20) this library
// targets; there is no Clenshaw variant.

namespace orthlin {

enum class BasisKind { monomial, chebyshev1, chebyshev2, legendre, newton, custom };

inline std::string_view to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::monomial: return "monomial";
        case BasisKind::chebyshev1: return "chebyshev1";
        case BasisKind::chebyshev2: return "chebyshev2";
        case BasisKind::legendre: return "legendre";
        case BasisKind::newton: return "newton";
        case BasisKind::custom: return "custom";
    }
    return "custom";
}

inline BasisKind basis_kind_from_string(std::string_view s) {
    if (s == "monomial") return BasisKind::monomial;
    if (s == "chebyshev1") return BasisKind::chebyshev1;
    if (s == "chebyshev2") return BasisKind::chebyshev2;
    if (s == "legendre") return BasisKind::legendre;
    if (s == "newton") return BasisKind::newton;
    if (s == "custom") return BasisKind::custom;
    throw Error(ErrorKind::invalid_input, "unknown basis kind '" + std::string(s) + "'");
}

/// Three-term recurrence coefficients. Built-in kinds generate coefficients
/// for any index on demand; custom and Newton bases are limited by the data
/// they were given.
class ThreeTermBasis {
   public:
    static ThreeTermBasis builtin(BasisKind kind, std::vector<double> nodes = {}) {
        require(kind != BasisKind::custom, ErrorKind::invalid_input,
                "custom bases need explicit coefficients");
        if (kind == BasisKind::newton)
            require(!nodes.empty(), ErrorKind::invalid_input, "newton basis requires a node list");
        ThreeTermBasis b;
        b.kind_ = kind;
        b.nodes_ = std::move(nodes);
        return b;
    }

    static ThreeTermBasis custom(std::vector<double> alpha, std::vector<double> beta,
                                 std::vector<double> gamma) {
        require(!alpha.empty() && alpha.size() == beta.size() && alpha.size() == gamma.size(),
                ErrorKind::invalid_input, "custom basis needs alpha, beta, gamma of equal nonzero length");
        for (double a : alpha) require(a != 0.0, ErrorKind::invalid_input, "alpha_j must be nonzero");
        ThreeTermBasis b;
        b.kind_ = BasisKind::custom;
        b.alpha_ = std::move(alpha);
        b.beta_ = std::move(beta);
        b.gamma_ = std::move(gamma);
        b.gamma_[0] = 0.0;
        return b;
    }

    BasisKind kind() const noexcept { return kind_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

    /// Highest degree phi_j this basis can produce.
    std::size_t max_degree() const noexcept {
        switch (kind_) {
            case BasisKind::newton: return nodes_.size();
            case BasisKind::custom: return alpha_.size();
            default: return static_cast<std::size_t>(-1);
        }
    }

    /// alpha_j; alpha_{-1} is 0 by convention.
    double alpha(long j) const {
        if (j < 0) return 0.0;
        check_index(j);
        switch (kind_) {
            case BasisKind::monomial:
            case BasisKind::newton: return 1.0;
            case BasisKind::chebyshev1: return j == 0 ? 1.0 : 0.5;
            case BasisKind::chebyshev2: return 0.5;
            case BasisKind::legendre: return (j + 1.0) / (2.0 * j + 1.0);
            case BasisKind::custom: return alpha_[static_cast<std::size_t>(j)];
        }
        return 1.0;
    }

    double beta(long j) const {
        check_index(j);
        switch (kind_) {
            case BasisKind::newton: return nodes_[static_cast<std::size_t>(j)];
            case BasisKind::custom: return beta_[static_cast<std::size_t>(j)];
            default: return 0.0;
        }
    }

    /// gamma_j; gamma_0 is never used and reads as 0.
    double gamma(long j) const {
        check_index(j);
        if (j == 0) return 0.0;
        switch (kind_) {
            case BasisKind::chebyshev1:
            case BasisKind::chebyshev2: return 0.5;
            case BasisKind::legendre: return j / (2.0 * j + 1.0);
            case BasisKind::custom: return gamma_[static_cast<std::size_t>(j)];
            default: return 0.0;
        }
    }

    const std::vector<double>& custom_alpha() const noexcept { return alpha_; }
    const std::vector<double>& custom_beta() const noexcept { return beta_; }
    const std::vector<double>& custom_gamma() const noexcept { return gamma_; }

   private:
    ThreeTermBasis() = default;

    void check_index(long j) const {
        require(j >= 0 && static_cast<std::size_t>(j) < max_degree(), ErrorKind::invalid_input,
                "basis '" + std::string(to_string(kind_)) + "' has no recurrence coefficient for index " +
                    std::to_string(j));
    }

    BasisKind kind_ = BasisKind::monomial;
    std::vector<double> nodes_;
    std::vector<double> alpha_, beta_, gamma_;
};

/// Monic degree-graded recurrence. shift[i-1] holds a_i (i >= 1) and
/// lower[i-2][j] holds b_i^j (i >= 2, j <= i-2); missing lower entries are 0.
class DegreeGradedBasis {
   public:
    DegreeGradedBasis(std::vector<double> shift, std::vector<std::vector<double>> lower)
        : shift_(std::move(shift)), lower_(std::move(lower)) {
        for (std::size_t r = 0; r < lower_.size(); ++r)
            require(lower_[r].size() <= r + 1, ErrorKind::invalid_input,
                    "degree-graded row for phi_" + std::to_string(r + 2) + " has too many entries");
    }

    std::size_t max_degree() const noexcept { return shift_.size(); }

    /// a_i, i >= 1.
    double shift(long i) const {
        require(i >= 1 && static_cast<std::size_t>(i) <= shift_.size(), ErrorKind::invalid_input,
                "degree-graded basis has no shift coefficient for index " + std::to_string(i));
        return shift_[static_cast<std::size_t>(i - 1)];
    }

    /// b_i^j, i >= 2, 0 <= j <= i-2.
    double lower(long i, long j) const {
        if (i < 2 || j < 0 || j > i - 2) return 0.0;
        auto r = static_cast<std::size_t>(i - 2);
        if (r >= lower_.size() || static_cast<std::size_t>(j) >= lower_[r].size()) return 0.0;
        return lower_[r][static_cast<std::size_t>(j)];
    }

    const std::vector<double>& shifts() const noexcept { return shift_; }
    const std::vector<std::vector<double>>& lower_table() const noexcept { return lower_; }

   private:
    std::vector<double> shift_;
    std::vector<std::vector<double>> lower_;
};

using Basis = std::variant<ThreeTermBasis, DegreeGradedBasis>;

inline ThreeTermBasis builtin_basis(BasisKind kind, std::vector<double> nodes = {}) {
    return ThreeTermBasis::builtin(kind, std::move(nodes));
}

inline bool is_three_term(const Basis& b) noexcept { return std::holds_alternative<ThreeTermBasis>(b); }

inline std::size_t max_degree(const Basis& b) {
    return std::visit([](const auto& s) { return s.max_degree(); }, b);
}

/// phi_0 .. phi_j at x, computed by the forward recurrence.
template <class T>
std::vector<T> eval_phi_all(const ThreeTermBasis& b, long j, T x) {
    std::vector<T> phi(static_cast<std::size_t>(j) + 1);
    phi[0] = T(1);
    for (long m = 0; m < j; ++m) {
        T prev = m > 0 ? phi[static_cast<std::size_t>(m - 1)] : T(0);
        phi[static_cast<std::size_t>(m + 1)] =
            ((x - b.beta(m)) * phi[static_cast<std::size_t>(m)] - b.gamma(m) * prev) / b.alpha(m);
    }
    return phi;
}

template <class T>
std::vector<T> eval_phi_all(const DegreeGradedBasis& b, long j, T x) {
    std::vector<T> phi(static_cast<std::size_t>(j) + 1);
    phi[0] = T(1);
    for (long i = 1; i <= j; ++i) {
        T acc = (x - b.shift(i)) * phi[static_cast<std::size_t>(i - 1)];
        for (long m = 0; m <= i - 2; ++m) acc += b.lower(i, m) * phi[static_cast<std::size_t>(m)];
        phi[static_cast<std::size_t>(i)] = acc;
    }
    return phi;
}

template <class T>
std::vector<T> eval_phi_all(const Basis& b, long j, T x) {
    return std::visit([&](const auto& s) { return eval_phi_all<T>(s, j, x); }, b);
}

template <class Spec, class T>
T eval_phi(const Spec& b, long j, T x) {
    require(j >= 0, ErrorKind::invalid_input, "eval_phi: negative degree");
    return eval_phi_all<T>(b, j, x).back();
}

/// Phi_k(x) = [phi_{k-1}(x), ..., phi_1(x), phi_0(x)]^T (descending degree).
template <class Spec, class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> phi_vector(const Spec& b, long k, T x) {
    require(k >= 1, ErrorKind::invalid_input, "phi_vector: k must be at least 1");
    auto all = eval_phi_all<T>(b, k - 1, x);
    Eigen::Matrix<T, Eigen::Dynamic, 1> out(k);
    for (long r = 0; r < k; ++r) out(r) = all[static_cast<std::size_t>(k - 1 - r)];
    return out;
}

/// Lower-triangular C with phi_i(x) = sum_m C(i, m) x^m for i <= k.
inline Matrix to_monomial(const ThreeTermBasis& b, long k) {
    require(k >= 0, ErrorKind::invalid_input, "to_monomial: negative degree");
    Matrix c = Matrix::Zero(k + 1, k + 1);
    c(0, 0) = 1.0;
    for (long j = 0; j < k; ++j) {
        // alpha_j phi_{j+1} = x phi_j - beta_j phi_j - gamma_j phi_{j-1}
        for (long m = 0; m <= j; ++m) {
            c(j + 1, m + 1) += c(j, m);
            c(j + 1, m) -= b.beta(j) * c(j, m);
            if (j > 0) c(j + 1, m) -= b.gamma(j) * c(j - 1, m);
        }
        c.row(j + 1) /= b.alpha(j);
    }
    return c;
}

inline Matrix to_monomial(const DegreeGradedBasis& b, long k) {
    require(k >= 0, ErrorKind::invalid_input, "to_monomial: negative degree");
    Matrix c = Matrix::Zero(k + 1, k + 1);
    c(0, 0) = 1.0;
    for (long i = 1; i <= k; ++i) {
        for (long m = 0; m < i; ++m) {
            c(i, m + 1) += c(i - 1, m);
            c(i, m) -= b.shift(i) * c(i - 1, m);
        }
        for (long j = 0; j <= i - 2; ++j) c.row(i) += b.lower(i, j) * c.row(j);
    }
    return c;
}

inline Matrix to_monomial(const Basis& b, long k) {
    return std::visit([&](const auto& s) { return to_monomial(s, k); }, b);
}

/// Ratio lc(phi_k) / lc(phi_{k-1}): 1/alpha_{k-1} for three-term bases, 1 for degree-graded ones.
inline double leading_ratio(const Basis& b, long k) {
    if (const auto* t = std::get_if<ThreeTermBasis>(&b)) return 1.0 / t->alpha(k - 1);
    return 1.0;
}

}  // namespace orthlin

#endif

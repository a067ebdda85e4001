#ifndef ORTHLIN_RANDOM_HPP
#define ORTHLIN_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ansatz.hpp"

namespace orthlin {

using Rng = std::mt19937_64;

template <class Dist>
Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, Dist dist) {
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
    return m;
}

inline Matrix random_uniform(Rng& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0) {
    return random_matrix(rng, rows, cols, std::uniform_real_distribution<double>(lo, hi));
}

inline Matrix random_normal(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    return random_matrix(rng, rows, cols, std::normal_distribution<double>(0.0, 1.0));
}

inline Matrix random_integer(Rng& rng, Eigen::Index rows, Eigen::Index cols, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    return random_matrix(rng, rows, cols, [&](Rng& g) { return static_cast<double>(d(g)); });
}

/// Coefficients P_0 .. P_k with entries uniform in [-1, 1].
inline MatrixPolynomial random_polynomial(Rng& rng, Basis basis, Eigen::Index n, long k) {
    std::vector<Matrix> c;
    for (long i = 0; i <= k; ++i) c.push_back(random_uniform(rng, n, n));
    return MatrixPolynomial(std::move(basis), std::move(c));
}

/// n distinct Newton nodes in [-1, 1].
inline ThreeTermBasis random_newton(Rng& rng, long count) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> nodes;
    for (long i = 0; i < count; ++i) nodes.push_back(d(rng));
    return ThreeTermBasis::builtin(BasisKind::newton, std::move(nodes));
}

/// (v, B) with standard normal entries.
inline AnsatzFactor random_factor(Rng& rng, long k, Eigen::Index n, Side side = Side::M1) {
    AnsatzFactor f;
    f.v = random_normal(rng, k, 1);
    f.B = random_normal(rng, k * n, (k - 1) * n);
    f.side = side;
    return f;
}

/// The problem behind the CLI's --random n,k,seed.
inline MatrixPolynomial random_problem(long n, long k, std::uint64_t seed, const std::string& kind = "chebyshev1") {
    require(n >= 1 && k >= 1, ErrorKind::invalid_input, "--random needs n >= 1 and k >= 1");
    Rng rng(seed);
    const BasisKind bk = basis_kind_from_string(kind);
    require(bk != BasisKind::custom, ErrorKind::invalid_input, "--random supports built-in bases only");
    Basis b = bk == BasisKind::newton ? Basis(random_newton(rng, k)) : Basis(ThreeTermBasis::builtin(bk));
    return random_polynomial(rng, std::move(b), n, k);
}

}  // namespace orthlin

#endif

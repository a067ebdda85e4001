#include <gtest/gtest.h>

#include "orthlin/oracle.hpp"
#include "orthlin/pencil.hpp"
#include "orthlin/random.hpp"

using namespace orthlin;

namespace {

MatrixPolynomial scalar(Basis b, std::vector<double> c) {
    std::vector<Matrix> m;
    for (double x : c) m.push_back(Matrix::Constant(1, 1, x));
    return MatrixPolynomial(std::move(b), std::move(m));
}

}  // namespace

TEST(MatrixPolynomial, Validation) {
    const Basis mono = builtin_basis(BasisKind::monomial);
    EXPECT_THROW(MatrixPolynomial(mono, {Matrix::Identity(2, 2)}), Error);
    EXPECT_THROW(MatrixPolynomial(mono, {Matrix::Identity(2, 2), Matrix::Zero(2, 2)}), Error);
    EXPECT_THROW(MatrixPolynomial(mono, {Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), Error);
    EXPECT_THROW(MatrixPolynomial(mono, {Matrix::Identity(2, 2), Matrix::Ones(2, 3)}), Error);
    const Basis newton = builtin_basis(BasisKind::newton, {0.5});
    EXPECT_THROW(MatrixPolynomial(newton, {Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1)}), Error);
    try {
        MatrixPolynomial(mono, {Matrix::Identity(2, 2), Matrix::Identity(3, 3)});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension_mismatch);
    }
}

TEST(MatrixPolynomial, Evaluate) {
    // diag(x - 1, x - 2)
    Matrix c0 = Matrix::Zero(2, 2), c1 = Matrix::Identity(2, 2);
    c0.diagonal() << -1, -2;
    MatrixPolynomial d(builtin_basis(BasisKind::monomial), {c0, c1});
    const CMatrix at = evaluate(d, Complex(0.5, 1.0));
    EXPECT_EQ(at(0, 0), Complex(-0.5, 1.0));
    EXPECT_EQ(at(1, 1), Complex(-1.5, 1.0));
    EXPECT_EQ(at(0, 1), Complex(0.0));
    auto t2 = scalar(builtin_basis(BasisKind::chebyshev1), {0, 0, 1});
    EXPECT_NEAR(evaluate(t2, 0.3)(0, 0).real(), -0.82, 1e-15);
}

TEST(MatrixPolynomial, EvaluateMatchesTopRow) {
    Rng rng(3);
    for (auto kind : {BasisKind::monomial, BasisKind::chebyshev1, BasisKind::legendre, BasisKind::chebyshev2}) {
        auto p = random_polynomial(rng, builtin_basis(kind), 3, 4);
        auto m = build_m(p);
        for (double xr : {-0.7, 0.2, 1.3}) {
            const Complex x(xr, 0.4);
            CVector phi = phi_vector(p.basis(), 4, x);
            CMatrix via(3, 3);
            via.setZero();
            CMatrix mx = m.at(x);
            for (long r = 0; r < 4; ++r) via += phi(r) * mx.middleCols(r * 3, 3);
            EXPECT_LE((via - evaluate(p, x)).norm(), 1e-12);
        }
    }
}

TEST(MatrixPolynomial, MonomialConversionAgrees) {
    Rng rng(4);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (auto kind : {BasisKind::chebyshev1, BasisKind::legendre, BasisKind::chebyshev2}) {
        auto p = random_polynomial(rng, builtin_basis(kind), 3, 6);
        const auto a = monomial_coefficients(p);
        for (int t = 0; t < 20; ++t) {
            const Complex x(d(rng), d(rng));
            CMatrix acc = CMatrix::Zero(3, 3);
            for (long m = 6; m >= 0; --m) acc = acc * x + a[m].cast<Complex>();
            const CMatrix ev = evaluate(p, x);
            EXPECT_LE((acc - ev).norm(), 1e-10 * std::max(1.0, ev.norm()));
        }
    }
}

TEST(MatrixPolynomial, Reversal) {
    // A x^2 + B x + C
    Matrix a = Matrix::Identity(2, 2), b = Matrix::Ones(2, 2), c = 2 * Matrix::Identity(2, 2);
    MatrixPolynomial p(builtin_basis(BasisKind::monomial), {c, b, a});
    auto rev = reversal_monomial(p);
    EXPECT_EQ(rev[0], a);
    EXPECT_EQ(rev[1], b);
    EXPECT_EQ(rev[2], c);
    EXPECT_EQ(leading_monomial_coefficient(p), a);
    auto t2 = scalar(builtin_basis(BasisKind::chebyshev1), {0, 0, 1});
    auto r2 = reversal_monomial(t2);
    EXPECT_EQ(r2[0](0, 0), 2.0);
    EXPECT_EQ(r2[1](0, 0), 0.0);
    EXPECT_EQ(r2[2](0, 0), -1.0);
}

TEST(MatrixPolynomial, Regularity) {
    MatrixPolynomial id(builtin_basis(BasisKind::monomial), {Matrix::Identity(2, 2), Matrix::Identity(2, 2) * 0.5});
    EXPECT_TRUE(is_regular(id).regular);
    Rng rng(9);
    auto p = random_polynomial(rng, builtin_basis(BasisKind::chebyshev1), 3, 3);
    EXPECT_TRUE(is_regular(p).regular);
    std::vector<Matrix> c = p.coeffs();
    for (auto& m : c) m.col(1).setZero();
    MatrixPolynomial s(p.basis(), c);
    EXPECT_FALSE(is_regular(s).regular);
}

TEST(MatrixPolynomial, DeterminantMatchesOracle) {
    Rng rng(21);
    for (int t = 0; t < 5; ++t) {
        auto p = random_polynomial(rng, builtin_basis(BasisKind::legendre), 3, 3);
        const auto d = det_poly(p);
        for (Complex x : {Complex(0.1, 0.2), Complex(-1.1, 0.5), Complex(0.9, 0)}) {
            const Complex direct = evaluate(p, x).determinant();
            EXPECT_LE(std::abs(direct - d(x)), 1e-8 * std::max(1.0, std::abs(direct)));
        }
    }
}

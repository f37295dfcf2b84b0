#include <gtest/gtest.h>

#include <random>

#include "mubgeo/dense.hpp"

using namespace mubgeo;

namespace {

using Matrix = std::vector<std::vector<Cyclo>>;

/// Matrix of omega^t X^a Z^c (I if inverted) written out from the definitions
/// X|n> = |n+1>, Z|n> = omega^n |n>, I|n> = |-n>.
Matrix oracle_matrix(PrimeModulus d, int a, int c, bool inverted, int t) {
    const int nd = static_cast<int>(d.value());
    Matrix m(nd, std::vector<Cyclo>(nd, Cyclo::zero(d)));
    for (int n = 0; n < nd; ++n) {
        const int s = inverted ? (nd - n) % nd : n;
        const int row = (s + a) % nd;
        m[row][n] = Cyclo::root(Residue(d, t + c * s));
    }
    return m;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
    const std::size_t n = x.size();
    const PrimeModulus d = x[0][0].modulus();
    Matrix r(n, std::vector<Cyclo>(n, Cyclo::zero(d)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
}

Matrix matrix_of(const MonomialOperator& op) {
    return oracle_matrix(op.modulus(), static_cast<int>(op.x_power.value()), static_cast<int>(op.z_power.value()),
                         op.inverted, static_cast<int>(op.phase.value()));
}

MonomialOperator random_op(PrimeModulus d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> r(0, static_cast<int>(d.value()) - 1);
    return {Residue(d, r(rng)), Residue(d, r(rng)), r(rng) % 2 == 1, Residue(d, r(rng))};
}

Ket random_ket(PrimeModulus d, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> r(0, static_cast<int>(d.value()) - 1);
    std::uniform_int_distribution<int> coin(0, 2);
    Ket k(d, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (coin(rng) == 0) continue;
        k[i] = Cyclo::root(Residue(d, r(rng))) + Cyclo::integer(d, r(rng));
    }
    return k;
}

}  // namespace

TEST(BasisKet, Examples) {
    const auto d = PrimeModulus::make(3);
    const Ket k = basis_ket<Cyclo>(d, 3, 0);
    EXPECT_EQ(k[0], Cyclo::one(d));
    EXPECT_TRUE(k[1].is_zero());
    EXPECT_TRUE(k[2].is_zero());
    const Ket last = basis_ket<Cyclo>(d, 9, 8);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(last[i].is_zero());
    EXPECT_EQ(last[8], Cyclo::one(d));
    try {
        basis_ket<Cyclo>(d, 3, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::index_out_of_range);
    }
    EXPECT_THROW(basis_ket<Cyclo>(d, 4, 0), Error);
}

TEST(Monomial, ApplyExamples) {
    for (int dv : {3, 5, 7}) {
        const auto d = PrimeModulus::make(dv);
        const Ket shifted = mubgeo::apply(MonomialOperator::shift(Residue(d, 1)), basis_ket<Cyclo>(d, dv, dv - 1));
        EXPECT_TRUE(shifted.equals(basis_ket<Cyclo>(d, dv, 0)));
        const Ket clocked = mubgeo::apply(MonomialOperator::clock(Residue(d, 1)), basis_ket<Cyclo>(d, dv, 1));
        EXPECT_TRUE(clocked.equals(Cyclo::root(Residue(d, 1)) * basis_ket<Cyclo>(d, dv, 1)));
    }
    const auto d3 = PrimeModulus::make(3);
    EXPECT_TRUE(mubgeo::apply(MonomialOperator::inversion(d3), basis_ket<Cyclo>(d3, 3, 1)).equals(basis_ket<Cyclo>(d3, 3, 2)));
}

TEST(Monomial, ApplyRejectsPairKets) {
    const auto d = PrimeModulus::make(3);
    try {
        mubgeo::apply(MonomialOperator::identity(d), basis_ket<Cyclo>(d, 9, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::dimension_mismatch);
    }
}

TEST(Monomial, MatrixMatchesOracle) {
    std::mt19937_64 rng(1);
    for (int dv : {3, 5, 7}) {
        const auto d = PrimeModulus::make(dv);
        for (int it = 0; it < 30; ++it) {
            const auto op = random_op(d, rng);
            const auto dense = to_dense<Cyclo>(op);
            const Matrix oracle = matrix_of(op);
            std::size_t nonzero_rows = 0;
            for (int r = 0; r < dv; ++r) {
                std::size_t in_row = 0;
                for (int c = 0; c < dv; ++c) {
                    EXPECT_EQ(dense(r, c), oracle[r][c]);
                    in_row += !oracle[r][c].is_zero();
                }
                nonzero_rows += in_row == 1;
            }
            EXPECT_EQ(nonzero_rows, static_cast<std::size_t>(dv));
        }
    }
}

TEST(Monomial, ZXPhaseFromDenseOracle) {
    const auto d = PrimeModulus::make(3);
    const auto X = MonomialOperator::shift(Residue(d, 1));
    const auto Z = MonomialOperator::clock(Residue(d, 1));
    // ZX = omega XZ, read off the 3x3 matrix product
    const Matrix zx = multiply(matrix_of(Z), matrix_of(X));
    const Matrix xz = multiply(matrix_of(X), matrix_of(Z));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_EQ(zx[r][c], Cyclo::root(Residue(d, 1)) * xz[r][c]);
    const auto zx_op = compose(Z, X);
    EXPECT_EQ(zx_op.phase.value(), 1u);
    EXPECT_EQ(matrix_of(zx_op), zx);
    EXPECT_EQ(compose(X, Z).phase.value(), 0u);
}

TEST(Monomial, ComposeExamples) {
    const auto d = PrimeModulus::make(5);
    const MonomialOperator op{Residue(d, 2), Residue(d, 3), false, Residue(d, 1)};
    EXPECT_EQ(compose(op, MonomialOperator::identity(d)), op);
    EXPECT_EQ(compose(MonomialOperator::identity(d), op), op);
    EXPECT_EQ(compose(MonomialOperator::inversion(d), MonomialOperator::inversion(d)), MonomialOperator::identity(d));
}

TEST(MonomialProperty, ComposeMatchesMatrixProduct) {
    std::mt19937_64 rng(2);
    for (int dv : {3, 5, 7, 11}) {
        const auto d = PrimeModulus::make(dv);
        for (int it = 0; it < 40; ++it) {
            const auto a = random_op(d, rng), b = random_op(d, rng), c = random_op(d, rng);
            EXPECT_EQ(matrix_of(compose(a, b)), multiply(matrix_of(a), matrix_of(b)));
            EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
            EXPECT_EQ(compose(a, adjoint(a)), MonomialOperator::identity(d));
            EXPECT_EQ(compose(adjoint(a), a), MonomialOperator::identity(d));
            EXPECT_TRUE(to_dense<Cyclo>(adjoint(a)).equals(to_dense<Cyclo>(a).adjoint()));
        }
    }
}

TEST(MonomialProperty, PowerIsRepeatedCompose) {
    std::mt19937_64 rng(3);
    const auto d = PrimeModulus::make(7);
    for (int it = 0; it < 20; ++it) {
        const auto a = random_op(d, rng);
        auto acc = MonomialOperator::identity(d);
        for (std::uint32_t k = 0; k < 9; ++k) {
            EXPECT_EQ(power(a, k), acc);
            acc = compose(acc, a);
        }
    }
}

TEST(MonomialProperty, ApplyThenInnerMatchesDense) {
    std::mt19937_64 rng(4);
    for (int dv : {3, 5, 7}) {
        const auto d = PrimeModulus::make(dv);
        for (int it = 0; it < 20; ++it) {
            const auto op = random_op(d, rng);
            const Ket k = random_ket(d, dv, rng), bra = random_ket(d, dv, rng);
            const Matrix m = matrix_of(op);
            Ket expected(d, dv);
            for (int r = 0; r < dv; ++r)
                for (int c = 0; c < dv; ++c) expected[r] += m[r][c] * k[c];
            const Ket got = mubgeo::apply(op, k);
            EXPECT_TRUE(got.equals(expected));
            EXPECT_EQ(inner(bra, got), inner(bra, expected));
        }
    }
}

TEST(MonomialProperty, TwoParticleActions) {
    std::mt19937_64 rng(5);
    const auto d = PrimeModulus::make(5);
    for (int it = 0; it < 10; ++it) {
        const auto op = random_op(d, rng);
        const Ket a = random_ket(d, 5, rng), b = random_ket(d, 5, rng);
        EXPECT_TRUE(apply_second(op, tensor(a, b)).equals(tensor(a, mubgeo::apply(op, b))));
        EXPECT_TRUE(apply_first(op, tensor(a, b)).equals(tensor(mubgeo::apply(op, a), b)));
        const auto big = kron(DenseMatrix<Cyclo>::identity(d, 5), to_dense<Cyclo>(op));
        const Ket v = random_ket(d, 25, rng);
        EXPECT_TRUE(apply_second(op, v).equals(big.apply(v)));
    }
}

TEST(Tensor, Examples) {
    const auto d = PrimeModulus::make(3);
    const Ket e00 = tensor(basis_ket<Cyclo>(d, 3, 0), basis_ket<Cyclo>(d, 3, 0));
    EXPECT_TRUE(e00.equals(basis_ket<Cyclo>(d, 9, 0)));
    const Ket e12 = tensor(basis_ket<Cyclo>(d, 3, 1), basis_ket<Cyclo>(d, 3, 2));
    EXPECT_TRUE(e12.equals(basis_ket<Cyclo>(d, 9, 5)));
    EXPECT_EQ(pair_slot(d, 1, 2), 5u);
    Ket u(d, 3);
    u[0] = Cyclo::one(d).scaled(1);
    u[2] = Cyclo::root(Residue(d, 1), 1);
    u[1] = Cyclo::root(Residue(d, 2), 1);
    EXPECT_TRUE(is_normalized(u));
    EXPECT_TRUE(is_normalized(tensor(u, u)));
    EXPECT_THROW(tensor(e00, u), Error);
}

TEST(Inner, Examples) {
    const auto d = PrimeModulus::make(5);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m)
            EXPECT_EQ(inner(basis_ket<Cyclo>(d, 5, n), basis_ket<Cyclo>(d, 5, m)),
                      n == m ? Cyclo::one(d) : Cyclo::zero(d));
    std::mt19937_64 rng(6);
    for (int it = 0; it < 20; ++it) {
        const Ket a = random_ket(d, 5, rng), b = random_ket(d, 5, rng);
        EXPECT_EQ(inner(a, b), inner(b, a).conj());
        const Cyclo self = inner(a, a);
        EXPECT_EQ(self, self.conj());
        EXPECT_GE(self.to_complex().real(), 0.0);
    }
    EXPECT_THROW(inner(basis_ket<Cyclo>(d, 5, 0), basis_ket<Cyclo>(d, 25, 0)), Error);
}

TEST(TensorProperty, BilinearAndMultiplicative) {
    std::mt19937_64 rng(7);
    for (int dv : {3, 5}) {
        const auto d = PrimeModulus::make(dv);
        for (int it = 0; it < 20; ++it) {
            const Ket a = random_ket(d, dv, rng), b = random_ket(d, dv, rng), c = random_ket(d, dv, rng),
                      e = random_ket(d, dv, rng);
            EXPECT_EQ(inner(tensor(a, b), tensor(c, e)), inner(a, c) * inner(b, e));
            Ket ac = a;
            ac += c;
            Ket lhs = tensor(ac, b);
            Ket rhs = tensor(a, b);
            rhs += tensor(c, b);
            EXPECT_TRUE(lhs.equals(rhs));
            const Cyclo s = Cyclo::root(Residue(d, 1));
            EXPECT_TRUE(tensor(s * a, b).equals(s * tensor(a, b)));
            EXPECT_TRUE(tensor(a, s * b).equals(s * tensor(a, b)));
        }
    }
}

TEST(FloatKet, MirrorsExactKets) {
    std::mt19937_64 rng(8);
    const auto d = PrimeModulus::make(7);
    for (int it = 0; it < 10; ++it) {
        const Ket a = random_ket(d, 7, rng), b = random_ket(d, 7, rng);
        const auto op = random_op(d, rng);
        const FloatKet fa = to_float(a), fb = to_float(b);
        EXPECT_LT(std::abs(inner(fa, fb) - inner(a, b).to_complex()), 1e-12);
        EXPECT_TRUE(mubgeo::apply(op, fa).equals(to_float(mubgeo::apply(op, a)), 1e-12));
    }
}

#include "oracles.hpp"

#include "stmod/exactlin.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace stmod;

TEST_CASE("prime field arithmetic")
{
    const PrimeField f7(7);
    CHECK(f7.add(5, 4) == 2);
    CHECK(f7.sub(2, 5) == 4);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.neg(0) == 0);
    CHECK(f7.reduce(-1) == 6);
    for (Scalar a = 1; a < 7; ++a)
        CHECK(f7.mul(a, f7.inv(a)) == 1);
    CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(101), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_NOTHROW(PrimeField(97));
    CHECK_THROWS(f7.inv(0));
}

TEST_CASE("rref examples")
{
    const PrimeField f2(2), f3(3);
    auto e = rref(Matrix::from_rows(f2, {{1, 1}, {1, 1}}));
    CHECK(e.rank() == 1);
    CHECK(e.pivots == std::vector<std::size_t>{0});

    const Matrix id = Matrix::identity(f3, 3);
    e = rref(id);
    CHECK(e.reduced == id);
    CHECK(e.rank() == 3);

    const Matrix a = Matrix::from_rows(f3, {{2, 1}, {1, 2}});
    CHECK(rank(a) == 1);
    CHECK(oracle::brute_rank(a) == 1);
}

TEST_CASE("kernel_basis examples")
{
    const PrimeField f2(2), f5(5);
    Matrix k = kernel_basis(Matrix::from_rows(f2, {{1, 1}}));
    CHECK(k == Matrix::from_rows(f2, {{1}, {1}}));
    CHECK(kernel_basis(Matrix::identity(f5, 3)).cols() == 0);

    const Matrix a = Matrix::from_rows(f5, {{1, 2}, {2, 4}});
    k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK(k.col(0) == Vec{3, 1});
    std::size_t solutions = 0;
    oracle::each_vector(f5, 2, [&](const Vec& v) { solutions += (a * v == Vec{0, 0}) ? 1 : 0; });
    CHECK(solutions == 5);
}

TEST_CASE("solve examples")
{
    const PrimeField f2(2), f7(7);
    const Vec b{3, 6, 1};
    CHECK(solve(Matrix::identity(f7, 3), b) == b);
    CHECK(solve(Matrix::from_rows(f2, {{1, 1}}), Vec{1}) == Vec{1, 0});
    CHECK_FALSE(solve(Matrix::from_rows(f2, {{1, 1}, {1, 1}}), Vec{1, 0}).has_value());
    CHECK_THROWS_AS(solve(Matrix::identity(f2, 2), Vec{1}), std::invalid_argument);
}

TEST_CASE("random instances: rref, rank, kernel, solve")
{
    std::mt19937_64 rng(11);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        const PrimeField k(p);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            const Matrix a = oracle::random_matrix(k, rows, cols, rng);
            const RowEchelon e = rref(a);
            CHECK(rref(e.reduced).reduced == e.reduced);
            CHECK(rank(a) == rank(a.transpose()));
            CHECK(rank(a) == oracle::brute_rank(a));
            CHECK(oracle::row_space_size(e.reduced) == oracle::row_space_size(a));
            const Matrix ker = kernel_basis(a);
            CHECK(ker.cols() + rank(a) == cols);
            if (ker.cols() > 0) {
                CHECK((a * ker).is_zero());
                CHECK(rank(ker) == ker.cols());
            }
            const Vec b = oracle::random_matrix(k, rows, 1, rng).col(0);
            const auto x = solve(a, b);
            bool solvable = false;
            oracle::each_vector(k, cols, [&](const Vec& v) { solvable = solvable || a * v == b; });
            CHECK(x.has_value() == solvable);
            if (x)
                CHECK(a * *x == b);
        }
    }
}

TEST_CASE("inverse and subspace coordinates")
{
    const PrimeField f3(3);
    const Matrix a = Matrix::from_rows(f3, {{1, 2}, {0, 1}});
    const auto inv = inverse(a);
    REQUIRE(inv);
    CHECK((a * *inv).is_identity());
    CHECK_FALSE(inverse(Matrix::from_rows(f3, {{1, 2}, {2, 1}})).has_value());

    const Subspace s(Matrix::from_rows(f3, {{1, 2}, {1, 2}, {0, 0}}));
    CHECK(s.dim() == 1);
    CHECK(s.contains(Vec{2, 2, 0}));
    CHECK_FALSE(s.contains(Vec{1, 0, 0}));
    CHECK(s.coordinates(Vec{2, 2, 0}) == Vec{2});
    CHECK(s.reduce(Vec{1, 1, 1}) == Vec{0, 0, 1});
}

TEST_CASE("matrix assembly")
{
    const PrimeField f5(5);
    const Matrix a = Matrix::from_rows(f5, {{1, 2}});
    const Matrix b = Matrix::from_rows(f5, {{3}});
    const Matrix parts[] = {a, b};
    CHECK(Matrix::hstack(parts) == Matrix::from_rows(f5, {{1, 2, 3}}));
    CHECK(Matrix::block_diagonal(parts) == Matrix::from_rows(f5, {{1, 2, 0}, {0, 0, 3}}));
    CHECK(Matrix::from_rows(f5, {{-1}})(0, 0) == 4);
    CHECK(Matrix::from_rows(f5, {{2, 0}, {0, 2}}).power(4).is_identity());
}

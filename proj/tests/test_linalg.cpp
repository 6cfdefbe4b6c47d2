#include "qpw/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qpw;

namespace {

Matrix random_matrix(std::mt19937& rng, int r, int c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = Scalar(d(rng));
    return m;
}

// Rank by counting nonzero rows after naive fraction-free elimination on a copy.
int oracle_rank(Matrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int p = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) p = i;
        if (p < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        for (int i = rank + 1; i < m.rows(); ++i) {
            Scalar a = m(rank, col), b = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) = a * m(i, j) - b * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST(Linalg, RankAgainstFractionFreeElimination) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        Matrix m = random_matrix(rng, 1 + trial % 5, 1 + (trial / 5) % 6, -1, 1);
        EXPECT_EQ(m.rank(), oracle_rank(m));
    }
}

TEST(Linalg, KernelIsAnnihilatedAndComplementary) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix m = random_matrix(rng, 3, 5, -2, 2);
        Matrix k = m.kernel();
        EXPECT_TRUE((m * k).is_zero());
        EXPECT_EQ(k.cols() + m.rank(), m.cols());
        EXPECT_EQ(k.rank(), k.cols());
    }
}

TEST(Linalg, SolveProducesSolutionOrRefuses) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix a = random_matrix(rng, 4, 3, -2, 2);
        Matrix x0 = random_matrix(rng, 3, 1);
        Matrix b = a * x0;
        Matrix x;
        ASSERT_TRUE(a.solve(b, x));
        EXPECT_EQ(a * x, b);
    }
    Matrix a(2, 1);
    a(0, 0) = Scalar(1);
    a(1, 0) = Scalar(1);
    Matrix b(2, 1);
    b(0, 0) = Scalar(1);
    b(1, 0) = Scalar(2);
    Matrix x;
    EXPECT_FALSE(a.solve(b, x));
}

TEST(Linalg, RationalFunctionEntries) {
    Matrix m(2, 2);
    m(0, 0) = Scalar(1);
    m(0, 1) = Scalar(1);
    m(1, 0) = Scalar::t();
    m(1, 1) = Scalar(1);
    EXPECT_EQ(m.rank(), 2);
    Matrix at1(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) at1(i, j) = Scalar(*m(i, j).eval(1));
    EXPECT_EQ(at1.rank(), 1);
}

TEST(Linalg, EchelonTracksCombinations) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<SparseVec> gens;
        Echelon e(true);
        for (int g = 0; g < 4; ++g) {
            SparseVec v;
            for (int c = 0; c < 6; ++c) {
                int x = d(rng);
                if (x) v.emplace_back(c, Scalar(x));
            }
            gens.push_back(v);
            e.insert(v, g);
        }
        // A random combination must reduce to zero and its recorded
        // coefficients must rebuild it.
        SparseVec target;
        for (int g = 0; g < 4; ++g) target = axpy(target, Scalar(d(rng)), gens[g]);
        SparseVec comb;
        SparseVec rem = e.reduce(target, &comb);
        EXPECT_TRUE(rem.empty());
        SparseVec rebuilt;
        for (auto& [g, c] : comb) rebuilt = axpy(rebuilt, c, gens[g]);
        EXPECT_EQ(rebuilt, target);
    }
}

TEST(Linalg, EchelonRejectsDependentRows) {
    Echelon e;
    EXPECT_TRUE(e.insert({{0, Scalar(1)}, {2, Scalar(3)}}));
    EXPECT_FALSE(e.insert({{0, Scalar(2)}, {2, Scalar(6)}}));
    EXPECT_EQ(e.rank(), 1);
    EXPECT_TRUE(e.is_pivot(0));
    EXPECT_FALSE(e.is_pivot(2));
}

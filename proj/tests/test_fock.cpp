// test_fock.cpp: basis enumeration, ladder operators, Hamiltonian and current

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bhdimer/fock.hpp"

using namespace bhdimer;

namespace {

// Independent term-by-term builder from operator products.
Operator hamiltonian_from_products(const FockBasis& b, const HamiltonianParams& p) {
    const Operator a1 = annihilation(b, 1), a2 = annihilation(b, 2);
    const Operator n1 = number_operator(b, 1), n2 = number_operator(b, 2);
    const Operator I = Operator::Identity(b.dim(), b.dim());
    Operator H = p.detuning * (n1 + n2);
    H -= 0.5 * p.hopping * (a2.adjoint() * a1 + a1.adjoint() * a2);
    H += 0.5 * p.interaction * (n1 * (n1 - I) + n2 * (n2 - I));
    H += 0.5 * p.drive * (a1.adjoint() + a1);
    return H;
}

} // namespace

TEST(FockBasis, SmallEnumerations) {
    const FockBasis b1(1);
    ASSERT_EQ(b1.dim(), 3);
    EXPECT_EQ(b1.state(0).n1, 0);
    EXPECT_EQ(b1.state(0).n2, 0);
    EXPECT_EQ(b1.state(1).n1, 1);
    EXPECT_EQ(b1.state(1).n2, 0);
    EXPECT_EQ(b1.state(2).n1, 0);
    EXPECT_EQ(b1.state(2).n2, 1);

    EXPECT_EQ(FockBasis(0).dim(), 1);
    EXPECT_EQ(FockBasis(20).dim(), 231);
    EXPECT_THROW(FockBasis(-1), std::invalid_argument);
}

TEST(FockBasis, OrderingAndIndex) {
    const FockBasis b(7);
    ASSERT_EQ(b.dim(), FockBasis::dim_for(7));
    for (int i = 0; i < b.dim(); ++i) {
        const Occupation s = b.state(i);
        EXPECT_EQ(b.index(s.n1, s.n2), i);
        if (i > 0) {
            const Occupation p = b.state(i - 1);
            const bool ordered = p.total() < s.total() || (p.total() == s.total() && p.n1 > s.n1);
            EXPECT_TRUE(ordered) << "at " << i;
        }
    }
    EXPECT_EQ(b.index(8, 0), -1);
    EXPECT_EQ(b.index(-1, 0), -1);
    for (int N = 0; N <= 7; ++N) {
        EXPECT_EQ(b.state(FockBasis::block_offset(N)).total(), N);
        EXPECT_EQ(b.state(FockBasis::block_offset(N)).n1, N);
    }
}

TEST(Ladder, MatrixElements) {
    const FockBasis b(3);
    const Operator a1 = annihilation(b, 1);
    const Operator a2 = annihilation(b, 2);
    EXPECT_DOUBLE_EQ(a1(b.index(0, 0), b.index(1, 0)).real(), 1.0);
    EXPECT_DOUBLE_EQ(a1(b.index(1, 0), b.index(2, 0)).real(), std::sqrt(2.0));
    for (int n1 = 0; n1 <= 3; ++n1) {
        EXPECT_EQ(a2.col(b.index(n1, 0)).norm(), 0.0);
    }
    EXPECT_THROW(annihilation(b, 0), std::invalid_argument);
    EXPECT_THROW(number_operator(b, 3), std::invalid_argument);
}

TEST(Ladder, NumberOperators) {
    const FockBasis b(2);
    EXPECT_EQ(number_operator(b, 1)(b.index(2, 0), b.index(2, 0)).real(), 2.0);
    EXPECT_EQ(number_operator(b, 2)(b.index(2, 0), b.index(2, 0)).real(), 0.0);
    const FockBasis b1(1);
    EXPECT_EQ((number_operator(b1, 1) + number_operator(b1, 2)).trace().real(), 2.0);
    const Operator a1 = annihilation(b, 1);
    EXPECT_LT((a1.adjoint() * a1 - number_operator(b, 1)).norm(), 1e-15);
}

TEST(Ladder, CommutatorAwayFromEdge) {
    const int n_max = 6;
    const FockBasis b(n_max);
    for (int mode : {1, 2}) {
        const Operator a = annihilation(b, mode);
        const Operator comm = a * a.adjoint() - a.adjoint() * a;
        for (int i = 0; i < b.dim(); ++i) {
            if (b.state(i).total() > n_max - 1) continue;
            for (int j = 0; j < b.dim(); ++j) {
                if (b.state(j).total() > n_max - 1) continue;
                EXPECT_NEAR(std::abs(comm(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-14);
            }
        }
    }
}

TEST(Hamiltonian, DiagonalExample) {
    const FockBasis b(4);
    const Operator H = hamiltonian(b, {1.5, 0.7, 0.25, 0.3});
    const int k = b.index(2, 0);
    EXPECT_NEAR(H(k, k).real(), 3.25, 1e-15);
    const Operator Href = hamiltonian_from_products(b, {1.5, 0.7, 0.25, 0.3});
    EXPECT_NEAR(Href(k, k).real(), 3.25, 1e-14);
}

TEST(Hamiltonian, HoppingOnlyBlock) {
    const FockBasis b(3);
    const double J = 0.8;
    const Operator H = hamiltonian(b, {0.0, J, 0.0, 0.0});
    const Operator block = H.block(FockBasis::block_offset(1), FockBasis::block_offset(1), 2, 2);
    EXPECT_EQ(block(0, 0), Complex(0.0));
    EXPECT_EQ(block(1, 1), Complex(0.0));
    EXPECT_DOUBLE_EQ(block(0, 1).real(), -J / 2);
    EXPECT_DOUBLE_EQ(block(1, 0).real(), -J / 2);
}

TEST(Hamiltonian, MatchesProductBuilderAndIsHermitian) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const FockBasis b(1 + trial % 6);
        const HamiltonianParams p{u(rng), u(rng), pos(rng), u(rng)};
        const Operator H = hamiltonian(b, p);
        EXPECT_EQ((H - H.adjoint()).cwiseAbs().maxCoeff(), 0.0);
        EXPECT_LT((H - hamiltonian_from_products(b, p)).cwiseAbs().maxCoeff(), 1e-13);
    }
    EXPECT_THROW(hamiltonian(FockBasis(2), {0, 1, -0.1, 0}), std::invalid_argument);
}

TEST(Hamiltonian, BlockDiagonalWithoutDrive) {
    const FockBasis b(6);
    const Operator H = hamiltonian(b, {0.3, 0.5, 0.25, 0.0});
    for (int i = 0; i < b.dim(); ++i) {
        for (int j = 0; j < b.dim(); ++j) {
            if (b.state(i).total() != b.state(j).total()) EXPECT_EQ(H(i, j), Complex(0.0));
        }
    }
}

TEST(Current, Structure) {
    const FockBasis b(5);
    const Operator j = current_operator(b);
    EXPECT_EQ((j - j.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(j.diagonal().cwiseAbs().maxCoeff(), 0.0);
    const Operator N = total_number(b);
    EXPECT_EQ((j * N - N * j).cwiseAbs().maxCoeff(), 0.0);

    // Matches (1/2i)(a2^+ a1 - a1^+ a2) from operator products.
    const Operator a1 = annihilation(b, 1), a2 = annihilation(b, 2);
    const Operator ref = (a2.adjoint() * a1 - a1.adjoint() * a2) / Complex(0.0, 2.0);
    EXPECT_LT((j - ref).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Current, SingleParticleBlock) {
    const FockBasis b(2);
    const Operator j = current_operator(b);
    const Eigen::Matrix2cd blk = j.block(1, 1, 2, 2);
    // |1,0> -> |0,1> with amplitude 1/(2i)
    EXPECT_NEAR(std::abs(blk(1, 0) - Complex(0.0, -0.5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(blk(0, 1) - Complex(0.0, 0.5)), 0.0, 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
    EXPECT_NEAR(es.eigenvalues()(0), -0.5, 1e-15);
    EXPECT_NEAR(es.eigenvalues()(1), 0.5, 1e-15);
}

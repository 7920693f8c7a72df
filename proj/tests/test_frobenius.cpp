#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "curvefrob/frobenius.hpp"
#include "curvefrob/parser.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace curvefrob;

TEST_CASE("bezoutian residue on the A_k family") {
    // hand expansion of the Bezoutian: Delta = 2 * sum_i x^i u^(k-1-i), so
    // Res(x^i) = 0 for i < k-1 and Res(x^(k-1)) = 1/2
    for (int k = 2; k <= 6; ++k) {
        CurveFunctionPair pair = testutil::ak_pair(k);
        ResidueFunctional rf = bezoutian_dual_basis(pair);
        REQUIRE(static_cast<int>(rf.values.size()) == k);
        for (int i = 0; i < k - 1; ++i) CHECK(rf.values[static_cast<std::size_t>(i)] == 0);
        CHECK(rf.values[static_cast<std::size_t>(k - 1)] == Rational(1, 2));
        CHECK(rf.socle_degree == k - 1);
    }
}

TEST_CASE("bezoutian residue on the node") {
    // Delta = -y - u over the staircase {1, y}
    CurveFunctionPair pair = testutil::node_pair();
    ResidueFunctional rf = bezoutian_dual_basis(pair);
    CHECK(rf.values[0] == 0);
    CHECK(rf.values[1] == -1);
    CHECK(rf.socle_degree == 1);
}

TEST_CASE("euler-jacobi identity pins the residue orientation") {
    CurveFunctionPair k2 = testutil::ak_pair(2);
    ResidueFunctional rf2 = bezoutian_dual_basis(k2);
    CHECK(jacobian_det(k2.g, k2.J) == parse_polynomial("4*x"));
    CHECK(residue_of(jacobian_det(k2.g, k2.J), k2, rf2) == 2);

    CurveFunctionPair node = testutil::node_pair();
    ResidueFunctional rfn = bezoutian_dual_basis(node);
    CHECK(residue_of(jacobian_det(node.g, node.J), node, rfn) == 2);

    for (const auto& entry : testutil::corpus())
        CHECK(euler_jacobi_check(entry.pair, bezoutian_dual_basis(entry.pair)).pass);
}

TEST_CASE("dual basis and residue grading over the corpus") {
    for (const auto& entry : testutil::corpus()) {
        ResidueFunctional rf = bezoutian_dual_basis(entry.pair);
        CHECK(bezoutian_duality_check(entry.pair, rf).pass);
        CHECK(residue_grading_check(entry.pair, rf).pass);
    }
}

TEST_CASE("metric matrices of the reference families") {
    // A_2 raw metric in the monic basis {1, x}
    CurveFunctionPair k2 = testutil::ak_pair(2);
    FrobeniusData d2 = multiplication_table(k2);
    CHECK(d2.metric_raw.at(0, 0) == 0);
    CHECK(d2.metric_raw.at(0, 1) == Rational(1, 2));
    CHECK(d2.metric_raw.at(1, 0) == Rational(1, 2));
    CHECK(d2.metric_raw.at(1, 1) == 0);

    // normalized metric is the anti-diagonal identity for every k
    for (int k = 2; k <= 6; ++k) {
        FrobeniusData data = multiplication_table(testutil::ak_pair(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                CHECK(data.metric_normalized.at(i, j) == (i + j == k - 1 ? 1 : 0));
    }

    // node: basis {1, y}, normalized pairing <1, y> = 1 after dividing by
    // Res(socle) = -1
    FrobeniusData node = multiplication_table(testutil::node_pair());
    CHECK(node.metric_normalized.at(0, 1) == 1);
    CHECK(node.metric_normalized.at(1, 0) == 1);
    CHECK(node.metric_normalized.at(0, 0) == 0);
    CHECK(node.metric_normalized.at(1, 1) == 0);
}

TEST_CASE("multiplication table of the A_k family is the truncated power algebra") {
    for (int k = 2; k <= 5; ++k) {
        FrobeniusData data = multiplication_table(testutil::ak_pair(k));
        REQUIRE(static_cast<int>(data.basis.size()) == k);
        for (int i = 0; i < k; ++i)
            CHECK(data.basis[static_cast<std::size_t>(i)] == Poly::monomial({i, 0}));
        CHECK(data.unit_index == 0);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c)
                    CHECK(data.structure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                                        [static_cast<std::size_t>(c)] ==
                          (a + b == c ? 1 : 0));
    }
}

TEST_CASE("node multiplication: y * y = 0 and 1 * y = y") {
    FrobeniusData data = multiplication_table(testutil::node_pair());
    REQUIRE(data.basis.size() == 2);
    CHECK(data.basis[1] == Poly::var_y());
    CHECK(data.structure[1][1] == std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(data.structure[0][1] == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("frobenius axioms hold exactly and fail under perturbation") {
    for (const CurveFunctionPair& pair :
         {testutil::ak_pair(3), testutil::node_pair(), testutil::pab_pair(2, 3)}) {
        FrobeniusData data = multiplication_table(pair);
        for (const CheckResult& c : frobenius_axiom_check(data)) CHECK(c.pass);
    }

    // negative control: a symmetric perturbation of one structure constant
    // breaks associativity
    FrobeniusData broken = multiplication_table(testutil::ak_pair(3));
    broken.structure[1][2][0] = 1;
    broken.structure[2][1][0] = 1;
    bool assoc_failed = false;
    for (const CheckResult& c : frobenius_axiom_check(broken))
        if (c.name == "frobenius_associativity") assoc_failed = !c.pass;
    CHECK(assoc_failed);
}

TEST_CASE("primitivity of the class of 1") {
    for (const CurveFunctionPair& pair :
         {testutil::ak_pair(4), testutil::node_pair(), testutil::pab_pair(3, 4)}) {
        JordanChainSet chains = homogeneous_jordan_chains(pair);
        ConnectionPair conn = connection_matrices(pair, chains);
        CheckResult r = primitivity_check(pair, chains, conn);
        CHECK(r.pass);
    }
    // A_k: eigenvalue 0 because nu(1) = -(k-2)/2 <= 0
    CurveFunctionPair a4 = testutil::ak_pair(4);
    JordanChainSet chains = homogeneous_jordan_chains(a4);
    ConnectionPair conn = connection_matrices(a4, chains);
    CHECK(conn.Ainf.at(0, 0) == 0);
}

TEST_CASE("fibre semisimplicity certificates") {
    // A_2 at t0 = 1: the fibre algebra is C[x]/(x^2 - 1)
    CurveFunctionPair k2 = testutil::ak_pair(2);
    FrobeniusData d2 = multiplication_table(k2);
    FibreProbeReport r2 = fibre_semisimplicity_probe(k2, d2, Rational(1), {}, 0);
    CHECK(r2.dim == 2);
    CHECK(r2.dim_ok);
    CHECK(r2.semisimple);

    FrobeniusData dn = multiplication_table(testutil::node_pair());
    FibreProbeReport rn =
        fibre_semisimplicity_probe(testutil::node_pair(), dn, Rational(1), {}, 0);
    CHECK(rn.dim == 2);
    CHECK(rn.semisimple);

    CHECK_THROWS_AS(fibre_semisimplicity_probe(k2, d2, Rational(0), {}, 0),
                    std::invalid_argument);

    // u = (0, -1) collapses F = x - x = 0: the dimension check must flag it
    FibreProbeReport bad =
        fibre_semisimplicity_probe(k2, d2, Rational(1), {Rational(0), Rational(-1)}, 0);
    CHECK_FALSE(bad.dim_ok);
    CHECK_FALSE(bad.semisimple);
}

TEST_CASE("nilpotency indices at the origin") {
    for (int k = 2; k <= 5; ++k) {
        CurveFunctionPair pair = testutil::ak_pair(k);
        FrobeniusData data = multiplication_table(pair);
        CheckResult r = nilpotency_probe(pair, data);
        CHECK(r.pass);
        CHECK(r.details.find("(x)^" + std::to_string(k) + " = 0") != std::string::npos);
    }
    CurveFunctionPair node = testutil::node_pair();
    CheckResult rn = nilpotency_probe(node, multiplication_table(node));
    CHECK(rn.pass);
    CHECK(rn.details.find("(y)^2 = 0") != std::string::npos);
}

TEST_CASE("socle uniqueness over the corpus") {
    for (const auto& entry : testutil::corpus()) {
        ResidueFunctional rf = bezoutian_dual_basis(entry.pair);
        CHECK_NOTHROW(socle_index(entry.pair, rf));
    }
}

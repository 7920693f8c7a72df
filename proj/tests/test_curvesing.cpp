#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "curvefrob/curvesing.hpp"
#include "curvefrob/parser.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace curvefrob;

TEST_CASE("validate_pair on the A_3 reference input") {
    CurveFunctionPair pair = testutil::ak_pair(3);
    CHECK(pair.e == 3);
    CHECK(pair.p_total == Rational(5, 2));
    CHECK(pair.J == parse_polynomial("2*y"));
    CHECK(pair.mu() == 3);
    CHECK(pair.weights.px == 1);
    CHECK(pair.weights.py == Rational(3, 2));
}

TEST_CASE("weight normalization rescales deg f to 1") {
    // same data as A_3 but with doubled weights
    CurveFunctionPair pair = validate_pair(Poly::var_x(), parse_polynomial("x^3 + y^2"),
                                           WeightSystem(Rational(2), Rational(3)));
    CHECK(pair.weights.px == 1);
    CHECK(pair.weights.py == Rational(3, 2));
    CHECK(pair.e == 3);
}

TEST_CASE("validation errors") {
    WeightSystem unit;
    try {
        validate_pair(Poly::var_x(), parse_polynomial("x + y^2"), unit);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::SmoothCurve);
    }
    try {
        validate_pair(Poly::var_x(), parse_polynomial("x*(x + y)"), unit);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::NonIsolated);
        CHECK(e.which() == "O/(g,J)");
    }
    try {
        validate_pair(Poly::var_x(), parse_polynomial("x^2 + y"), unit);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::SmoothCurve);
    }
    try {
        validate_pair(parse_polynomial("x + y^2"), parse_polynomial("x^2 + y^2"), unit);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::NotQuasiHomogeneous);
        CHECK(e.which() == "f");
    }
    try {
        validate_pair(Poly::constant(2), parse_polynomial("x^2 + y^2"), unit);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::DegenerateF);
    }
    CHECK_THROWS_AS(validate_pair(Poly(), parse_polynomial("x^2 + y^2"), unit), ValidationError);
    // f vanishing on a branch of g
    try {
        validate_pair(parse_polynomial("y^2"), parse_polynomial("x^2*y + y^3"),
                      WeightSystem(Rational(1, 2), Rational(1, 2)));
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(e.code() == ValidationCode::NonIsolated);
    }
}

TEST_CASE("milnor numbers of the reference families") {
    for (int k = 2; k <= 6; ++k) {
        MilnorReport r = milnor_numbers(testutil::ak_pair(k));
        CHECK(r.mu == k);
        CHECK(r.mu1 == k - 1);
        CHECK(r.mu2 == 1);
    }
    MilnorReport node = milnor_numbers(testutil::node_pair());
    CHECK(node.mu == 2);
    CHECK(node.mu1 == 1);
    CHECK(node.mu2 == 1);
    for (auto [a, b] : {std::pair<int, int>{2, 3}, {3, 4}, {2, 2}, {1, 4}}) {
        MilnorReport r = milnor_numbers(testutil::pab_pair(a, b));
        CHECK(r.mu == a + b);
        CHECK(r.mu1 == 1);
        CHECK(r.mu2 == a + b - 1);
    }
}

TEST_CASE("milnor additivity over the corpus") {
    for (const auto& entry : testutil::corpus()) {
        MilnorReport r = milnor_numbers(entry.pair);  // throws on inconsistency
        CHECK(r.mu == r.mu1 + r.mu2);
    }
}

TEST_CASE("kernel identity") {
    CHECK(kernel_identity_check(testutil::ak_pair(4)).pass);
    CHECK(kernel_identity_check(testutil::node_pair()).pass);
    // f = x^2 + y^3, g = xy: all four numbers equal mu2 = 4
    CurveFunctionPair pair = testutil::pab_pair(2, 3);
    CheckResult r = kernel_identity_check(pair);
    CHECK(r.pass);
    CHECK(r.details.find("mu2=4") != std::string::npos);
}

TEST_CASE("euler identity and a perturbed negative control") {
    CHECK(euler_identity_check(testutil::node_pair()).pass);
    CHECK(euler_identity_check(testutil::ak_pair(2)).pass);
    CurveFunctionPair broken = testutil::ak_pair(2);
    broken.J += Poly::var_x();  // not the Jacobian determinant anymore
    CHECK_FALSE(euler_identity_check(broken).pass);
}

TEST_CASE("nu positivity on the gradient ideal generators") {
    CHECK(nu_positivity_check(testutil::ak_pair(5)).pass);
    CHECK(nu_positivity_check(testutil::node_pair()).pass);
    for (const auto& entry : testutil::corpus()) CHECK(nu_positivity_check(entry.pair).pass);
}

TEST_CASE("mu constancy probe") {
    CHECK(mu_constancy_probe(testutil::ak_pair(2), {Rational(1)}).pass);
    CHECK(mu_constancy_probe(testutil::node_pair(), {Rational(1)}).pass);
    SeededRng rng(3);
    std::vector<Rational> samples;
    for (int i = 0; i < 3; ++i) samples.push_back(rng.next_rational(1, 7));
    for (auto [a, b] : {std::pair<int, int>{2, 3}, {3, 4}})
        CHECK(mu_constancy_probe(testutil::pab_pair(a, b), samples).pass);
}

TEST_CASE("default t samples are {1, 2, -1} plus two seeded small rationals") {
    std::vector<Rational> s = default_t_samples(0);
    REQUIRE(s.size() == 5);
    CHECK(s[0] == 1);
    CHECK(s[1] == 2);
    CHECK(s[2] == -1);
    for (std::size_t i = 3; i < 5; ++i) {
        CHECK(s[i] > 0);
        CHECK(s[i].get_num() >= 1);
        CHECK(s[i].get_num() <= 7);
        CHECK(s[i].get_den() >= 1);
        CHECK(s[i].get_den() <= 7);
    }
    CHECK(default_t_samples(0) == default_t_samples(0));
    CHECK(default_t_samples(1) != default_t_samples(2));
}

TEST_CASE("corpus has at least 25 valid pairs") {
    CHECK(testutil::corpus().size() >= 25);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "subpot/errors.hpp"
#include "subpot/expr.hpp"

using namespace subpot;

namespace {

Eigen::VectorXd point1(double a) {
    Eigen::VectorXd u(1);
    u << a;
    return u;
}

Eigen::VectorXd point2(double a, double b) {
    Eigen::VectorXd u(2);
    u << a, b;
    return u;
}

} // namespace

TEST_CASE("parse builds the expected trees") {
    const ExprPtr e = parse("cos(u1)", 1);
    const auto* un = std::get_if<Unary>(&e->node);
    REQUIRE(un != nullptr);
    CHECK(un->fn == UnaryFn::Cos);
    CHECK(std::get<Variable>(un->child->node).index == 0);

    const ExprPtr f = parse("u1^2*u2 + 1", 2);
    const auto* add = std::get_if<Binary>(&f->node);
    REQUIRE(add != nullptr);
    CHECK(add->op == BinaryOp::Add);
    CHECK(std::get<Constant>(add->rhs->node).value == 1.0);
    const auto* mul = std::get_if<Binary>(&add->lhs->node);
    REQUIRE(mul != nullptr);
    CHECK(mul->op == BinaryOp::Mul);
    const auto* pw = std::get_if<Binary>(&mul->lhs->node);
    REQUIRE(pw != nullptr);
    CHECK(pw->op == BinaryOp::Pow);
    CHECK(std::get<Variable>(pw->lhs->node).index == 0);
    CHECK(std::get<Constant>(pw->rhs->node).value == 2.0);
    CHECK(std::get<Variable>(mul->rhs->node).index == 1);
}

TEST_CASE("variables beyond the declared dimension are rejected") {
    CHECK_THROWS_AS(parse("u3", 2), ParseError);
    CHECK_THROWS_AS(parse("u0", 1), ParseError);
    CHECK_THROWS_AS(parse("u100", 2), ParseError);
}

TEST_CASE("lexical and syntax errors carry positions") {
    try {
        parse("u1 + @", 1);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
    CHECK_THROWS_AS(parse("", 1), ParseError);
    CHECK_THROWS_AS(parse("2u1", 1), ParseError); // no implicit multiplication
    CHECK_THROWS_AS(parse("sin 0.5", 1), ParseError);
    CHECK_THROWS_AS(parse("(u1", 1), ParseError);
    CHECK_THROWS_AS(parse("u1 +", 1), ParseError);
    CHECK_THROWS_AS(parse("foo(u1)", 1), ParseError);
}

TEST_CASE("exponents must fold to constants") {
    CHECK_NOTHROW(parse("u1^2", 1));
    CHECK_NOTHROW(parse("u1^-2", 1));
    CHECK_NOTHROW(parse("u1^(3/2)", 1));
    CHECK_THROWS_AS(parse("u1^u1", 1), ParseError);
    CHECK_THROWS_AS(parse("u1^sin(1)", 1), ParseError);
}

TEST_CASE("precedence and associativity") {
    // 2 - 3 - 4 parses left associative
    CHECK(eval(*parse("2 - 3 - 4", 1), point1(0.0)) == -5.0);
    CHECK(eval(*parse("2 + 3*4", 1), point1(0.0)) == 14.0);
    CHECK(eval(*parse("-u1^2", 1), point1(2.0)) == -4.0);    // ^ binds tighter than unary minus
    CHECK(eval(*parse("2^3", 1), point1(0.0)) == 8.0);
    CHECK(eval(*parse("12/3/2", 1), point1(0.0)) == 2.0);
    CHECK(eval(*parse("1e2 + 1.5E-1", 1), point1(0.0)) == doctest::Approx(100.15));
}

TEST_CASE("jet evaluation matches hand results") {
    const Jet3 j = eval_jet(*parse("u1*u2", 2), point2(2.0, 3.0));
    CHECK(j.value == 6.0);
    CHECK(j.grad(0) == 3.0);
    CHECK(j.grad(1) == 2.0);
    CHECK(j.hess(0, 1) == 1.0);

    const Jet3 s = eval_jet(*parse("sin(u1)", 1), point1(0.0));
    CHECK(s.grad(0) == 1.0);
    CHECK(s.third(0, 0, 0) == -1.0);

    const Jet3 cb = eval_jet(*parse("u1^3/6", 1), point1(1.7));
    CHECK(cb.third(0, 0, 0) == 1.0);
}

TEST_CASE("vector functions evaluate componentwise") {
    const VectorFunction r = VectorFunction::parse({"cos(u1)", "sin(u1)"}, 1);
    const auto jets = r.eval_jets(point1(0.0));
    CHECK(jets[0].value == 1.0);
    CHECK(jets[1].value == 0.0);
    CHECK(jets[0].grad(0) == 0.0);
    CHECK(jets[1].grad(0) == 1.0);

    const VectorFunction n = VectorFunction::parse({"sin(u1)", "-cos(u1)"}, 1);
    const auto njets = n.eval_jets(point1(0.0));
    CHECK(njets[0].value == 0.0);
    CHECK(njets[1].value == -1.0);
    CHECK(njets[0].grad(0) == 1.0);
    CHECK(njets[1].grad(0) == 0.0);
}

TEST_CASE("vector function errors name the component") {
    const VectorFunction v = VectorFunction::parse({"u1", "ln(u1)"}, 1);
    try {
        v.eval_jets(point1(-1.0));
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("component 1") != std::string::npos);
    }
}

TEST_CASE("printing round-trips random trees structurally") {
    std::mt19937 rng(31337);
    for (int t = 0; t < 200; ++t) {
        const ExprPtr e = testing::random_expression(rng, 5, 3);
        const std::string printed = to_string(*e);
        const ExprPtr back = parse(printed, 3);
        CHECK(structurally_equal(*e, *back));
    }
}

TEST_CASE("jet values agree with the plain evaluator on random trees") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    int ok = 0;
    for (int t = 0; t < 400 && ok < 100; ++t) {
        const ExprPtr e = testing::random_expression(rng, 5, 2);
        const Eigen::VectorXd u = point2(point(rng), point(rng));
        double plain;
        Jet3 jet(2);
        try {
            plain = eval(*e, u);
            jet = eval_jet(*e, u);
        } catch (const DomainError&) {
            continue;
        }
        if (!std::isfinite(plain) || std::abs(plain) > 1e6) continue;
        CHECK(std::abs(jet.value - plain) <= 1e-14 * std::max(1.0, std::abs(plain)));
        ++ok;
    }
    CHECK(ok >= 100);
}

TEST_CASE("jet coefficients of random trees agree with finite differences") {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    int ok = 0;
    for (int t = 0; t < 3000 && ok < 100; ++t) {
        const ExprPtr e = testing::random_expression(rng, 4, 2);
        Eigen::VectorXd u = point2(point(rng), point(rng));
        Jet3 jet(2);
        try {
            jet = eval_jet(*e, u);
        } catch (const DomainError&) {
            continue;
        }
        if (!std::isfinite(jet.value) || testing::max_coefficient(jet) > 50.0) continue;
        const auto f = [&e](const Eigen::VectorXd& x) { return eval(*e, x); };
        testing::JetFdErrors err;
        try {
            err = testing::jet_vs_fd(f, jet, u);
        } catch (const DomainError&) {
            continue;
        }
        if (!err.oracle_ok) continue;
        CHECK(err.order12 < 1e-5);
        CHECK(err.order3 < 1e-3);
        ++ok;
    }
    CHECK(ok >= 100);
}

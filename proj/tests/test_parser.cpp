#include <doctest.h>

#include "support.hpp"
#include "wick/parser.hpp"

using namespace wick;
using wick::testing::Rng;

TEST_CASE("parsing resolves fields, named constants and coefficients") {
    CHECK(lower(parse("phi(x1)*phis(x1)")) == phi_power(1, 1, "x1"));
    CHECK(lower(parse("j[mu](y)")) == noether_current("mu", "y"));
    CHECK(lower(parse("L(x)")) == quartic_interaction("x"));
    CHECK(lower(parse("Q(x)")) == charge_generator("x"));
    CHECK(lower(parse("phi^2(x1)")) == phi_power(2, 0, "x1"));
    CHECK(lower(parse("phis^2(x2)")) == phi_power(0, 2, "x2"));
    CHECK(lower(parse("(phi*phis)^2(x)")) == quartic_interaction("x"));
    CHECK(lower(parse("d[mu] phi(x)")) == basic_field(Species::Phi, "x", {"mu"}));
    CHECK(lower(parse("2*phi(x)")) ==
          basic_field(Species::Phi, "x").scaled(ScalarCoeff::integer(2)));
    CHECK(lower(parse("1/2*phi(x)")) ==
          basic_field(Species::Phi, "x").scaled(ScalarCoeff::rational(Rational(1, 2))));
    CHECK(lower(parse("i*phi(x) - i*phi(x)")).is_zero());
    CHECK(lower(parse("phi(x1) + phis(x2)")) ==
          basic_field(Species::Phi, "x1") + basic_field(Species::PhiStar, "x2"));
    // the current written out by hand
    CHECK(lower(parse("i*(phi*d[mu]phis - phis*d[mu]phi)(y)")) ==
          noether_current("mu", "y"));
    CHECK(lower(parse("  phi ( x1 ) *  phis( x1 )")) == phi_power(1, 1, "x1"));
}

TEST_CASE("parse errors carry positions and expectations") {
    CHECK_THROWS_AS(parse("phi(x1"), ParseError);
    CHECK_THROWS_AS(parse("phi)("), ParseError);
    CHECK_THROWS_AS(parse("foo(x1)"), ParseError);
    CHECK_THROWS_AS(parse("j(x1)"), ParseError);     // missing index
    CHECK_THROWS_AS(parse("d[mu] L(x)"), ParseError);  // derivative of a named constant
    CHECK_THROWS_AS(parse("phi(x1) phis(x2)"), ParseError);  // missing operator
    CHECK_THROWS_AS(parse("1/0"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("phi + $");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
    // lowering errors: atoms must carry a point
    CHECK_THROWS_AS(lower(parse("phi")), ParseError);
    CHECK_THROWS_AS(lower(parse("phi*phis(x2)")), ParseError);
}

TEST_CASE("tproduct argument lists") {
    auto args = parse_tproduct_args("tproduct(phis(x1), phi(x2))");
    REQUIRE(args.size() == 2);
    CHECK(args[0] == basic_field(Species::PhiStar, "x1"));
    CHECK(args[1] == basic_field(Species::Phi, "x2"));
    auto one = parse_tproduct_args("L(x1)");
    REQUIRE(one.size() == 1);
    CHECK(one[0] == quartic_interaction("x1"));
}

namespace {

AstPtr random_ast(Rng& rng, int depth, int& label_counter) {
    auto node = std::make_shared<Ast>();
    int kind = depth <= 0 ? static_cast<int>(rng.pick(4)) : static_cast<int>(rng.pick(9));
    switch (kind) {
        case 0: {
            node->kind = Ast::Kind::Number;
            node->num = 1 + rng.pick(12);
            node->den = rng.coin() ? 1 : 2 + rng.pick(7);
            break;
        }
        case 1: node->kind = Ast::Kind::Imag; break;
        case 2: {
            node->kind = Ast::Kind::Field;
            node->species = rng.coin() ? Species::Phi : Species::PhiStar;
            long nd = rng.pick(3);
            for (long i = 0; i < nd; ++i)
                node->derivs.push_back("m" + std::to_string(rng.pick(4)));
            break;
        }
        case 3: {
            node->kind = Ast::Kind::Named;
            long which = rng.pick(3);
            if (which == 0) node->name = "L";
            else if (which == 1) node->name = "Q";
            else {
                node->name = "j";
                node->index = "n" + std::to_string(rng.pick(4));
            }
            break;
        }
        case 4: {
            node->kind = Ast::Kind::Negate;
            node->children = {random_ast(rng, depth - 1, label_counter)};
            break;
        }
        case 5: {
            node->kind = Ast::Kind::Power;
            node->children = {random_ast(rng, depth - 1, label_counter)};
            node->exponent = static_cast<int>(rng.pick(4));
            break;
        }
        case 6: {
            node->kind = Ast::Kind::PointApply;
            node->children = {random_ast(rng, depth - 1, label_counter)};
            node->label = "x" + std::to_string(++label_counter);
            break;
        }
        case 7: {
            node->kind = Ast::Kind::Product;
            long n = 2 + rng.pick(2);
            for (long i = 0; i < n; ++i)
                node->children.push_back(random_ast(rng, depth - 1, label_counter));
            break;
        }
        default: {
            node->kind = Ast::Kind::Sum;
            long n = 2 + rng.pick(2);
            for (long i = 0; i < n; ++i)
                node->children.push_back(random_ast(rng, depth - 1, label_counter));
            break;
        }
    }
    return node;
}

}  // namespace

TEST_CASE("print and parse round trip on a generated corpus") {
    Rng rng(271828);
    int labels = 0;
    int count = 0;
    while (count < 1200) {
        AstPtr ast = random_ast(rng, 3, labels);
        std::string text = print(ast);
        AstPtr back;
        try {
            back = parse(text);
        } catch (const ParseError& e) {
            FAIL("failed to reparse '", text, "': ", e.what());
            continue;
        }
        CHECK_MESSAGE(ast_equal(ast, back), "round trip mismatch on '", text, "'");
        ++count;
    }
}

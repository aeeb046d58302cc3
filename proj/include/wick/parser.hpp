#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wick/field_algebra.hpp"

namespace wick {

struct ParseError : std::runtime_error {
    size_t position;
    std::string expected;
    ParseError(const std::string& msg, size_t pos, std::string exp = {})
        : std::runtime_error(msg + " at position " + std::to_string(pos) +
                             (exp.empty() ? "" : " (expected " + exp + ")")),
          position(pos),
          expected(std::move(exp)) {}
};

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

/// Expression tree over the input grammar: atoms phi, phis, d[mu]phi, the
/// named constants L, j[mu], Q, rational and imaginary coefficients, products,
/// sums, powers and point application.
struct Ast {
    enum class Kind { Sum, Product, Power, Negate, Number, Imag, Field, Named, PointApply };
    Kind kind;

    std::vector<AstPtr> children;   // Sum, Product; single child: Power, Negate, PointApply
    long long num = 0, den = 1;     // Number
    Species species = Species::Phi; // Field
    std::vector<Index> derivs;      // Field
    std::string name;               // Named: "L", "Q", "j"
    Index index;                    // Named "j"
    Label label;                    // PointApply
    int exponent = 1;               // Power
};

AstPtr parse(const std::string& text);
std::string print(const AstPtr& ast);
bool ast_equal(const AstPtr& a, const AstPtr& b);

/// Resolves named constants and point labels into a field polynomial. Every
/// field atom must sit under a point application.
FieldPolynomial lower(const AstPtr& ast);

/// Splits "tproduct(e1, e2, ...)" into the lowered arguments; a plain
/// expression yields a single-element list.
std::vector<FieldPolynomial> parse_tproduct_args(const std::string& text);

}  // namespace wick

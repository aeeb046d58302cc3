#include "wick/parser.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace wick {

namespace {

const std::set<std::string> kKeywords = {"phi", "phis", "L", "Q", "j",
                                         "d",   "i",    "tproduct"};

class Parser {
  public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    AstPtr parse_expression() {
        AstPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input", pos_, "end of input");
        return e;
    }

    std::vector<AstPtr> parse_call_args() {
        skip_ws();
        expect('(');
        std::vector<AstPtr> args;
        args.push_back(parse_expr());
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            args.push_back(parse_expr());
            skip_ws();
        }
        expect(')');
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input", pos_, "end of input");
        return args;
    }

    bool try_keyword(const std::string& kw) {
        skip_ws();
        size_t save = pos_;
        if (text_.compare(pos_, kw.size(), kw) == 0) {
            pos_ += kw.size();
            if (pos_ >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                skip_ws();
                return true;
            }
        }
        pos_ = save;
        return false;
    }

  private:
    AstPtr parse_expr() {
        skip_ws();
        std::vector<AstPtr> children;
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        AstPtr t = parse_term();
        children.push_back(neg ? negate(t) : t);
        skip_ws();
        while (peek() == '+' || peek() == '-') {
            bool minus = text_[pos_] == '-';
            ++pos_;
            AstPtr n = parse_term();
            children.push_back(minus ? negate(n) : n);
            skip_ws();
        }
        if (children.size() == 1) return children[0];
        auto s = std::make_shared<Ast>();
        s->kind = Ast::Kind::Sum;
        s->children = std::move(children);
        return s;
    }

    AstPtr parse_term() {
        std::vector<AstPtr> children{parse_factor()};
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            children.push_back(parse_factor());
            skip_ws();
        }
        if (children.size() == 1) return children[0];
        auto p = std::make_shared<Ast>();
        p->kind = Ast::Kind::Product;
        p->children = std::move(children);
        return p;
    }

    AstPtr parse_factor() {
        AstPtr base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t at = pos_;
            long long e = parse_nat();
            if (e < 0) throw ParseError("negative exponent", at);
            auto p = std::make_shared<Ast>();
            p->kind = Ast::Kind::Power;
            p->children = {base};
            p->exponent = static_cast<int>(e);
            base = p;
            skip_ws();
        }
        // point application: '(' identifier ')'
        if (peek() == '(') {
            size_t save = pos_;
            ++pos_;
            skip_ws();
            if (is_ident_start(peek())) {
                std::string id = read_ident();
                skip_ws();
                if (peek() == ')' && !kKeywords.count(id)) {
                    ++pos_;
                    auto a = std::make_shared<Ast>();
                    a->kind = Ast::Kind::PointApply;
                    a->children = {base};
                    a->label = id;
                    return a;
                }
            }
            pos_ = save;
        }
        return base;
    }

    AstPtr parse_primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            AstPtr e = parse_expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (!is_ident_start(c))
            throw ParseError("unexpected character", pos_,
                             "number, field, named constant or '('");

        size_t at = pos_;
        std::string id = read_ident();
        if (id == "i") {
            auto a = std::make_shared<Ast>();
            a->kind = Ast::Kind::Imag;
            return a;
        }
        if (id == "d") {
            std::vector<Index> derivs;
            derivs.push_back(parse_bracket_index());
            skip_ws();
            while (peek() == 'd' && looks_like_deriv()) {
                ++pos_;
                derivs.push_back(parse_bracket_index());
                skip_ws();
            }
            skip_ws();
            size_t fat = pos_;
            std::string f = read_ident();
            if (f != "phi" && f != "phis")
                throw ParseError("derivative must act on a basic field", fat,
                                 "'phi' or 'phis'");
            auto a = std::make_shared<Ast>();
            a->kind = Ast::Kind::Field;
            a->species = f == "phi" ? Species::Phi : Species::PhiStar;
            a->derivs = std::move(derivs);
            return a;
        }
        if (id == "phi" || id == "phis") {
            auto a = std::make_shared<Ast>();
            a->kind = Ast::Kind::Field;
            a->species = id == "phi" ? Species::Phi : Species::PhiStar;
            return a;
        }
        if (id == "L" || id == "Q") {
            auto a = std::make_shared<Ast>();
            a->kind = Ast::Kind::Named;
            a->name = id;
            return a;
        }
        if (id == "j") {
            auto a = std::make_shared<Ast>();
            a->kind = Ast::Kind::Named;
            a->name = "j";
            a->index = parse_bracket_index();
            return a;
        }
        throw ParseError("unknown identifier '" + id + "'", at,
                         "phi, phis, d[..], L, j[..], Q or i");
    }

    AstPtr parse_number() {
        auto a = std::make_shared<Ast>();
        a->kind = Ast::Kind::Number;
        a->num = parse_nat();
        a->den = 1;
        skip_ws();
        if (peek() == '/') {
            size_t save = pos_;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;  // not a fraction
                return a;
            }
            size_t at = pos_;
            a->den = parse_nat();
            if (a->den == 0) throw ParseError("zero denominator", at);
        }
        return a;
    }

    Index parse_bracket_index() {
        skip_ws();
        expect('[');
        skip_ws();
        if (!is_ident_start(peek()))
            throw ParseError("missing index symbol", pos_, "identifier");
        std::string ix = read_ident();
        if (kKeywords.count(ix))
            throw ParseError("keyword '" + ix + "' cannot name an index", pos_);
        skip_ws();
        expect(']');
        return ix;
    }

    bool looks_like_deriv() {
        size_t save = pos_;
        if (peek() != 'd') return false;
        ++pos_;
        skip_ws();
        bool ok = peek() == '[';
        pos_ = save;
        return ok;
    }

    long long parse_nat() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a number", pos_, "digit");
        long long v = 0;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (1LL << 40)) throw ParseError("number too large", pos_);
            ++pos_;
        }
        return v;
    }

    static AstPtr negate(AstPtr inner) {
        auto n = std::make_shared<Ast>();
        n->kind = Ast::Kind::Negate;
        n->children = {std::move(inner)};
        return n;
    }

    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string read_ident() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
            ++pos_;
        if (start == pos_) throw ParseError("expected identifier", pos_);
        return text_.substr(start, pos_ - start);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw ParseError("unexpected input", pos_, std::string("'") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string text_;
    size_t pos_ = 0;
};

bool atomic(const AstPtr& a) {
    switch (a->kind) {
        case Ast::Kind::Number: return a->den == 1;
        case Ast::Kind::Imag:
        case Ast::Kind::Field:
        case Ast::Kind::Named: return true;
        default: return false;
    }
}

std::string print_wrapped(const AstPtr& a, bool wrap) {
    std::string s = print(a);
    return wrap ? "(" + s + ")" : s;
}

}  // namespace

AstPtr parse(const std::string& text) { return Parser(text).parse_expression(); }

std::string print(const AstPtr& ast) {
    switch (ast->kind) {
        case Ast::Kind::Number:
            return ast->den == 1 ? std::to_string(ast->num)
                                 : std::to_string(ast->num) + "/" +
                                       std::to_string(ast->den);
        case Ast::Kind::Imag: return "i";
        case Ast::Kind::Field: {
            std::string s;
            for (const auto& ix : ast->derivs) s += "d[" + ix + "]";
            s += ast->species == Species::Phi ? "phi" : "phis";
            return s;
        }
        case Ast::Kind::Named:
            return ast->name == "j" ? "j[" + ast->index + "]" : ast->name;
        case Ast::Kind::Negate: {
            const AstPtr& c = ast->children[0];
            bool wrap = c->kind == Ast::Kind::Sum || c->kind == Ast::Kind::Negate;
            return "-" + print_wrapped(c, wrap);
        }
        case Ast::Kind::Power: {
            const AstPtr& c = ast->children[0];
            return print_wrapped(c, !atomic(c)) + "^" + std::to_string(ast->exponent);
        }
        case Ast::Kind::PointApply: {
            const AstPtr& c = ast->children[0];
            bool wrap = !(atomic(c) || c->kind == Ast::Kind::Power);
            return print_wrapped(c, wrap) + "(" + ast->label + ")";
        }
        case Ast::Kind::Product: {
            std::string s;
            for (size_t i = 0; i < ast->children.size(); ++i) {
                const AstPtr& c = ast->children[i];
                bool wrap = c->kind == Ast::Kind::Sum ||
                            c->kind == Ast::Kind::Product ||
                            c->kind == Ast::Kind::Negate;
                if (i) s += "*";
                s += print_wrapped(c, wrap);
            }
            return s;
        }
        case Ast::Kind::Sum: {
            std::string s;
            for (size_t i = 0; i < ast->children.size(); ++i) {
                const AstPtr& c = ast->children[i];
                if (c->kind == Ast::Kind::Negate && i > 0) {
                    const AstPtr& inner = c->children[0];
                    bool wrap = inner->kind == Ast::Kind::Sum ||
                                inner->kind == Ast::Kind::Negate;
                    s += " - " + print_wrapped(inner, wrap);
                } else {
                    bool wrap = c->kind == Ast::Kind::Sum;
                    if (i) s += " + ";
                    s += print_wrapped(c, wrap);
                }
            }
            return s;
        }
    }
    return "?";
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->children.size() != b->children.size()) return false;
    for (size_t i = 0; i < a->children.size(); ++i)
        if (!ast_equal(a->children[i], b->children[i])) return false;
    return a->num == b->num && a->den == b->den && a->species == b->species &&
           a->derivs == b->derivs && a->name == b->name && a->index == b->index &&
           a->label == b->label && a->exponent == b->exponent;
}

namespace {

FieldPolynomial lower_at(const AstPtr& ast, const std::optional<Label>& at) {
    switch (ast->kind) {
        case Ast::Kind::Number:
            return FieldPolynomial::constant(
                ScalarCoeff::rational(Rational(ast->num, ast->den)));
        case Ast::Kind::Imag: return FieldPolynomial::constant(ScalarCoeff::i());
        case Ast::Kind::Field:
            if (!at)
                throw ParseError("field atom without a point label", 0,
                                 "a '(label)' application");
            return basic_field(ast->species, *at, ast->derivs);
        case Ast::Kind::Named: {
            if (!at)
                throw ParseError("named constant without a point label", 0,
                                 "a '(label)' application");
            if (ast->name == "L") return quartic_interaction(*at);
            if (ast->name == "Q") return charge_generator(*at);
            return noether_current(ast->index, *at);
        }
        case Ast::Kind::Negate:
            return lower_at(ast->children[0], at).scaled(ScalarCoeff::integer(-1));
        case Ast::Kind::Power: {
            FieldPolynomial base = lower_at(ast->children[0], at);
            FieldPolynomial r = FieldPolynomial::constant(ScalarCoeff::one());
            for (int k = 0; k < ast->exponent; ++k) r = multiply(r, base);
            return r;
        }
        case Ast::Kind::PointApply: return lower_at(ast->children[0], ast->label);
        case Ast::Kind::Product: {
            FieldPolynomial r = FieldPolynomial::constant(ScalarCoeff::one());
            for (const auto& c : ast->children) r = multiply(r, lower_at(c, at));
            return r;
        }
        case Ast::Kind::Sum: {
            FieldPolynomial r;
            for (const auto& c : ast->children) r = r + lower_at(c, at);
            return r;
        }
    }
    throw std::logic_error("lower: unhandled node");
}

}  // namespace

FieldPolynomial lower(const AstPtr& ast) { return lower_at(ast, std::nullopt); }

std::vector<FieldPolynomial> parse_tproduct_args(const std::string& text) {
    Parser p(text);
    if (p.try_keyword("tproduct")) {
        std::vector<FieldPolynomial> out;
        for (const auto& a : p.parse_call_args()) out.push_back(lower(a));
        return out;
    }
    return {lower(parse(text))};
}

}  // namespace wick

#include "wick/field_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wick {

bool label_less(const Label& a, const Label& b) {
    auto split = [](const Label& s) {
        size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        long num = -1;
        if (i < s.size()) num = std::stol(s.substr(i));
        return std::pair<std::string, long>{s.substr(0, i), num};
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb) return pa < pb;
    if (na != nb) return na < nb;
    return a < b;
}

int BasicFieldSymbol::compare(const BasicFieldSymbol& o) const {
    if (species != o.species) return species == Species::Phi ? -1 : 1;
    if (derivs != o.derivs) return derivs < o.derivs ? -1 : 1;
    return 0;
}

std::string BasicFieldSymbol::str() const {
    std::string s;
    for (const auto& ix : derivs) s += "d[" + ix + "]";
    s += species == Species::Phi ? "phi" : "phis";
    return s;
}

int LocatedField::compare(const LocatedField& o) const {
    if (point != o.point) return label_less(point, o.point) ? -1 : 1;
    return sym.compare(o.sym);
}

FieldMonomial::FieldMonomial(ScalarCoeff c, std::vector<LocatedField> f)
    : coeff(std::move(c)), factors(std::move(f)) {
    std::sort(factors.begin(), factors.end());
}

FieldMonomial FieldMonomial::at(const Label& point, ScalarCoeff c,
                                std::vector<BasicFieldSymbol> syms) {
    std::vector<LocatedField> fs;
    fs.reserve(syms.size());
    for (auto& s : syms) fs.push_back(LocatedField{point, std::move(s)});
    return FieldMonomial{std::move(c), std::move(fs)};
}

std::optional<Label> FieldMonomial::single_point() const {
    std::optional<Label> p;
    for (const auto& f : factors) {
        if (!p) p = f.point;
        else if (*p != f.point)
            throw std::domain_error("FieldMonomial: factors span several labels");
    }
    return p;
}

int FieldMonomial::compare_factors(const FieldMonomial& o) const {
    if (factors.size() != o.factors.size())
        return factors.size() < o.factors.size() ? -1 : 1;
    for (size_t i = 0; i < factors.size(); ++i) {
        int c = factors[i].compare(o.factors[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string FieldMonomial::str() const {
    if (factors.empty()) return coeff.str();
    // Group consecutive equal factors at a point into powers, one point group
    // at a time: phi^2*phis^2(x1)*phi(x2).
    std::string body;
    size_t i = 0;
    while (i < factors.size()) {
        const Label& pt = factors[i].point;
        std::string group;
        while (i < factors.size() && factors[i].point == pt) {
            size_t j = i;
            while (j < factors.size() && factors[j].point == pt &&
                   factors[j].sym == factors[i].sym)
                ++j;
            if (!group.empty()) group += "*";
            group += factors[i].sym.str();
            if (j - i > 1) group += "^" + std::to_string(j - i);
            i = j;
        }
        if (!body.empty()) body += "*";
        body += group + "(" + pt + ")";
    }
    return term_str(coeff, body);
}

FieldPolynomial FieldPolynomial::constant(ScalarCoeff c) {
    if (c.is_zero()) return {};
    return FieldPolynomial{FieldMonomial::constant(std::move(c))};
}

FieldPolynomial FieldPolynomial::canonical() const {
    // Collect like terms: key = factor list plus coefficient grading.
    struct Key {
        std::vector<LocatedField> factors;
        int hb, m2;
        bool operator<(const Key& o) const {
            if (hb != o.hb) return hb < o.hb;
            if (m2 != o.m2) return m2 < o.m2;
            if (factors.size() != o.factors.size())
                return factors.size() < o.factors.size();
            for (size_t i = 0; i < factors.size(); ++i) {
                int c = factors[i].compare(o.factors[i]);
                if (c != 0) return c < 0;
            }
            return false;
        }
    };
    std::map<Key, ScalarCoeff> acc;
    for (const auto& t : terms) {
        auto sorted = t.factors;
        std::sort(sorted.begin(), sorted.end());
        Key k{std::move(sorted), t.coeff.hbar_power, t.coeff.mass2_power};
        auto it = acc.find(k);
        if (it == acc.end()) acc.emplace(std::move(k), t.coeff);
        else it->second = it->second.add_like(t.coeff);
    }
    FieldPolynomial out;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.terms.push_back(FieldMonomial{c, k.factors});
    return out;
}

FieldPolynomial FieldPolynomial::operator+(const FieldPolynomial& o) const {
    FieldPolynomial r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r.canonical();
}

FieldPolynomial FieldPolynomial::operator-(const FieldPolynomial& o) const {
    return *this + o.scaled(ScalarCoeff::integer(-1));
}

FieldPolynomial FieldPolynomial::scaled(const ScalarCoeff& c) const {
    FieldPolynomial r;
    for (const auto& t : terms) r.terms.push_back(FieldMonomial{t.coeff * c, t.factors});
    return r.canonical();
}

bool FieldPolynomial::operator==(const FieldPolynomial& o) const {
    auto a = canonical(), b = o.canonical();
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].coeff != b.terms[i].coeff ||
            a.terms[i].compare_factors(b.terms[i]) != 0)
            return false;
    return true;
}

std::string FieldPolynomial::str() const {
    auto c = canonical();
    if (c.terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c.terms.size(); ++i) {
        std::string t = c.terms[i].str();
        if (i == 0) s = t;
        else if (!t.empty() && t[0] == '-') s += " - " + t.substr(1);
        else s += " + " + t;
    }
    return s;
}

FieldPolynomial multiply(const FieldPolynomial& a, const FieldPolynomial& b) {
    FieldPolynomial r;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            std::vector<LocatedField> fs = ta.factors;
            fs.insert(fs.end(), tb.factors.begin(), tb.factors.end());
            r.terms.push_back(FieldMonomial{ta.coeff * tb.coeff, std::move(fs)});
        }
    return r.canonical();
}

int charge_number(const FieldMonomial& m) {
    int q = 0;
    for (const auto& f : m.factors) q += charge_of(f.sym.species);
    return q;
}

Rational mass_dimension(const FieldMonomial& m, int d) {
    if (d < 3) throw std::invalid_argument("mass_dimension: requires d >= 3");
    Rational dim = 0;
    for (const auto& f : m.factors)
        dim += Rational(d - 2, 2) + static_cast<long>(f.sym.derivs.size());
    return dim;
}

Rational mass_dimension(const FieldPolynomial& p, int d) {
    auto c = p.canonical();
    if (c.terms.empty())
        throw std::domain_error("mass_dimension: zero polynomial has no dimension");
    Rational dim = mass_dimension(c.terms[0], d);
    for (const auto& t : c.terms)
        if (mass_dimension(t, d) != dim)
            throw std::domain_error("mass_dimension: polynomial is not homogeneous");
    return dim;
}

bool in_first_derivative_class(const FieldMonomial& m) {
    for (const auto& f : m.factors)
        if (f.sym.derivs.size() > 1) return false;
    return true;
}

bool in_first_derivative_class(const FieldPolynomial& p) {
    for (const auto& t : p.terms)
        if (!in_first_derivative_class(t)) return false;
    return true;
}

namespace {

void require_first_derivative_class(const FieldPolynomial& p, const char* op) {
    if (!in_first_derivative_class(p))
        throw std::domain_error(std::string(op) +
                                ": defined only on polynomials in the basic fields "
                                "and their first derivatives");
}

}  // namespace

FieldPolynomial theta(const FieldPolynomial& p) {
    require_first_derivative_class(p, "theta");
    FieldPolynomial r;
    for (const auto& t : p.terms) {
        int q = charge_number(t);
        if (q == 0) continue;
        r.terms.push_back(FieldMonomial{t.coeff * ScalarCoeff::integer(q), t.factors});
    }
    return r.canonical();
}

std::vector<IndexedTerm> theta_mu(const FieldPolynomial& p) {
    require_first_derivative_class(p, "theta_mu");
    std::vector<IndexedTerm> out;
    for (const auto& t : p.terms) {
        // Leibniz over the factors: each derivative factor d^nu phi is traded
        // for a bare phi with a delta_mu^nu, sign per species.
        for (size_t i = 0; i < t.factors.size(); ++i) {
            const auto& f = t.factors[i];
            if (f.sym.derivs.size() != 1) continue;
            int sign = charge_of(f.sym.species);
            FieldMonomial m;
            m.coeff = t.coeff * ScalarCoeff::integer(sign);
            m.factors = t.factors;
            m.factors[i].sym.derivs.clear();
            std::sort(m.factors.begin(), m.factors.end());
            out.push_back(IndexedTerm{f.sym.derivs[0], std::move(m)});
        }
    }
    // Collect like terms per tied index.
    std::vector<IndexedTerm> collected;
    for (auto& it : out) {
        bool merged = false;
        for (auto& c : collected) {
            if (c.tied == it.tied && c.mono.compare_factors(it.mono) == 0 &&
                c.mono.coeff.same_grading(it.mono.coeff)) {
                c.mono.coeff = c.mono.coeff.add_like(it.mono.coeff);
                merged = true;
                break;
            }
        }
        if (!merged) collected.push_back(std::move(it));
    }
    std::erase_if(collected, [](const IndexedTerm& t) { return t.mono.coeff.is_zero(); });
    return collected;
}

FieldPolynomial charge_conjugate(const FieldPolynomial& p, const ScalarCoeff& eta) {
    if (eta.hbar_power != 0 || eta.mass2_power != 0)
        throw std::invalid_argument("charge_conjugate: eta must be a pure phase");
    FieldPolynomial r;
    for (const auto& t : p.terms) {
        FieldMonomial m;
        m.coeff = t.coeff;
        for (auto f : t.factors) {
            if (f.sym.species == Species::Phi) {
                f.sym.species = Species::PhiStar;
                m.coeff = m.coeff * eta;
            } else {
                f.sym.species = Species::Phi;
                m.coeff = m.coeff * eta.conjugate();
            }
            m.factors.push_back(std::move(f));
        }
        std::sort(m.factors.begin(), m.factors.end());
        r.terms.push_back(std::move(m));
    }
    return r.canonical();
}

std::optional<int> charge_conjugation_eigenvalue(const FieldPolynomial& p,
                                                 const ScalarCoeff& eta) {
    auto c = p.canonical();
    if (c.is_zero()) return std::nullopt;
    for (int ev : {1, -1}) {
        if ((charge_conjugate(c, eta) - c.scaled(ScalarCoeff::integer(ev))).is_zero())
            return ev;
    }
    return std::nullopt;
}

std::vector<Submonomial> submonomials(const FieldMonomial& m) {
    m.single_point();  // enforce locality
    // Group the factor multiset by type.
    std::vector<std::pair<LocatedField, int>> types;
    for (const auto& f : m.factors) {
        if (!types.empty() && types.back().first == f) ++types.back().second;
        else types.emplace_back(f, 1);
    }
    std::vector<Submonomial> out;
    std::vector<int> pick(types.size(), 0);
    auto binom = [](int n, int k) {
        long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    while (true) {
        Submonomial s;
        s.contracted.coeff = m.coeff;
        s.spectator.coeff = ScalarCoeff::one();
        s.factor = 1;
        for (size_t i = 0; i < types.size(); ++i) {
            for (int k = 0; k < pick[i]; ++k) s.contracted.factors.push_back(types[i].first);
            for (int k = pick[i]; k < types[i].second; ++k)
                s.spectator.factors.push_back(types[i].first);
            s.factor *= binom(types[i].second, pick[i]);
        }
        out.push_back(std::move(s));
        // next multi-index
        size_t i = 0;
        while (i < types.size() && pick[i] == types[i].second) pick[i++] = 0;
        if (i == types.size()) break;
        ++pick[i];
    }
    return out;
}

FieldPolynomial basic_field(Species s, const Label& point, std::vector<Index> derivs) {
    return FieldPolynomial{FieldMonomial::at(
        point, ScalarCoeff::one(), {BasicFieldSymbol{s, std::move(derivs)}})};
}

FieldPolynomial phi_power(int m, int n, const Label& point) {
    std::vector<BasicFieldSymbol> syms;
    for (int i = 0; i < m; ++i) syms.push_back(BasicFieldSymbol{Species::Phi, {}});
    for (int i = 0; i < n; ++i) syms.push_back(BasicFieldSymbol{Species::PhiStar, {}});
    return FieldPolynomial{FieldMonomial::at(point, ScalarCoeff::one(), std::move(syms))};
}

FieldPolynomial noether_current(const Index& mu, const Label& point) {
    FieldMonomial a = FieldMonomial::at(point, ScalarCoeff::i(),
                                        {BasicFieldSymbol{Species::Phi, {}},
                                         BasicFieldSymbol{Species::PhiStar, {mu}}});
    FieldMonomial b = FieldMonomial::at(point, ScalarCoeff::minus_i(),
                                        {BasicFieldSymbol{Species::PhiStar, {}},
                                         BasicFieldSymbol{Species::Phi, {mu}}});
    FieldPolynomial r;
    r.terms = {std::move(a), std::move(b)};
    return r.canonical();
}

FieldPolynomial quartic_interaction(const Label& point) {
    return phi_power(2, 2, point);
}

FieldPolynomial charge_generator(const Label& point) {
    return basic_field(Species::Phi, point).scaled(ScalarCoeff::i());
}

std::vector<FieldPolynomial> submonomial_basis(const Label& point, const Index& hint) {
    std::vector<FieldPolynomial> basis;
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n) basis.push_back(phi_power(m, n, point));
    basis.push_back(basic_field(Species::Phi, point, {hint + "_a"}));
    basis.push_back(basic_field(Species::PhiStar, point, {hint + "_b"}));
    basis.push_back(noether_current(hint, point));
    return basis;
}

}  // namespace wick

#include "wick/wick_engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wick {

namespace {

void quarantine_term_dummies(OpTerm& t) {
    std::map<Index, int> occ;
    for (const auto& k : t.kernels)
        for (const auto& [lab, ix] : k.derivs) ++occ[ix];
    for (const auto& f : t.fields)
        for (const auto& ix : f.sym.derivs) ++occ[ix];
    std::map<Index, Index> ren;
    for (const auto& [ix, n] : occ)
        if (n == 2 && !ix.empty() && ix[0] == '$') ren[ix] = "$r" + ix.substr(1);
    if (ren.empty()) return;
    for (auto& k : t.kernels)
        for (auto& [lab, ix] : k.derivs) {
            auto it = ren.find(ix);
            if (it != ren.end()) ix = it->second;
        }
    for (auto& f : t.fields)
        for (auto& ix : f.sym.derivs) {
            auto it = ren.find(ix);
            if (it != ren.end()) ix = it->second;
        }
}

std::string fields_str(const std::vector<LocatedField>& fields) {
    FieldMonomial m{ScalarCoeff::one(), fields};
    return m.factors.empty() ? std::string{} : m.str();
}

}  // namespace

OperatorExpr OperatorExpr::from_coeff(ScalarCoeff c) {
    if (c.is_zero()) return {};
    return OperatorExpr{{OpTerm{std::move(c), {}, {}}}};
}

OperatorExpr OperatorExpr::from(const FieldMonomial& m) {
    if (m.coeff.is_zero()) return {};
    return OperatorExpr{{OpTerm{m.coeff, {}, m.factors}}};
}

OperatorExpr OperatorExpr::from(const FieldPolynomial& p) {
    OperatorExpr r;
    for (const auto& t : p.terms)
        if (!t.coeff.is_zero()) r.terms.push_back(OpTerm{t.coeff, {}, t.factors});
    return canonicalize(r);
}

OperatorExpr OperatorExpr::from_dist(const DistExpr& e) {
    OperatorExpr r;
    for (const auto& t : e.terms) r.terms.push_back(OpTerm{t.c, t.kernels, {}});
    return canonicalize(r);
}

bool OperatorExpr::is_zero() const { return canonicalize(*this).terms.empty(); }

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
    OperatorExpr r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return canonicalize(r);
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const {
    return *this + o.scaled(ScalarCoeff::integer(-1));
}

OperatorExpr OperatorExpr::scaled(const ScalarCoeff& c) const {
    OperatorExpr r;
    for (const auto& t : terms) r.terms.push_back(OpTerm{t.c * c, t.kernels, t.fields});
    return canonicalize(r);
}

bool OperatorExpr::operator==(const OperatorExpr& o) const {
    return (*this - o).is_zero();
}

std::string OperatorExpr::str() const {
    OperatorExpr c = canonicalize(*this);
    if (c.terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c.terms.size(); ++i) {
        const auto& t = c.terms[i];
        std::string body = kernel_list_str(t.kernels);
        std::string fb = fields_str(t.fields);
        if (!fb.empty()) body += (body.empty() ? "" : "*") + fb;
        std::string term = term_str(t.c, body);
        if (i == 0) s = term;
        else if (!term.empty() && term[0] == '-') s += " - " + term.substr(1);
        else s += " + " + term;
    }
    return s;
}

OperatorExpr canonicalize(const OperatorExpr& e) {
    struct Key {
        std::vector<KernelFactor> kernels;
        std::vector<LocatedField> fields;
        int hb, m2;
        bool operator<(const Key& o) const {
            if (hb != o.hb) return hb < o.hb;
            if (m2 != o.m2) return m2 < o.m2;
            int c = compare_kernel_lists(kernels, o.kernels);
            if (c != 0) return c < 0;
            if (fields.size() != o.fields.size()) return fields.size() < o.fields.size();
            for (size_t i = 0; i < fields.size(); ++i) {
                int fc = fields[i].compare(o.fields[i]);
                if (fc != 0) return fc < 0;
            }
            return false;
        }
    };
    std::map<Key, ScalarCoeff> acc;
    for (const auto& t : e.terms) {
        if (t.c.is_zero()) continue;
        OpTerm w = t;
        canonicalize_term_inplace(w.kernels, w.fields, w.c);
        Key k{std::move(w.kernels), std::move(w.fields), w.c.hbar_power,
              w.c.mass2_power};
        auto it = acc.find(k);
        if (it == acc.end()) acc.emplace(std::move(k), w.c);
        else it->second = it->second.add_like(w.c);
    }
    OperatorExpr out;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.terms.push_back(OpTerm{c, k.kernels, k.fields});
    return out;
}

namespace {

// All cross contractions of one term pair with between min_pairs and
// max_pairs contracted leg pairs. A contraction joins a leg of the left term
// with an opposite-species leg of the right one; every leg-level matching
// contributes once, which reproduces the combinatorial factors of the star
// product after like-term collection.
void contract_pair(const OpTerm& tf, OpTerm tg, KernelKind kind, size_t min_pairs,
                   size_t max_pairs, std::vector<OpTerm>& out) {
    quarantine_term_dummies(tg);
    const auto& lf = tf.fields;
    const auto& lg = tg.fields;
    std::vector<bool> used(lg.size(), false);
    std::vector<std::pair<size_t, size_t>> pairs;

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == lf.size()) {
            if (pairs.size() < min_pairs) return;
            OpTerm t;
            t.c = tf.c * tg.c;
            t.kernels = tf.kernels;
            t.kernels.insert(t.kernels.end(), tg.kernels.begin(), tg.kernels.end());
            for (auto [a, b] : pairs) {
                KernelFactor k;
                k.kind = kind;
                k.a = lf[a].point;
                k.b = lg[b].point;
                for (const auto& ix : lf[a].sym.derivs) k.derivs.emplace_back(k.a, ix);
                for (const auto& ix : lg[b].sym.derivs) k.derivs.emplace_back(k.b, ix);
                t.kernels.push_back(std::move(k));
                if (kind != KernelKind::DeltaCommutator)
                    t.c = t.c * ScalarCoeff::hbar();
            }
            std::set<size_t> taken;
            for (auto [a, b] : pairs) taken.insert(a);
            for (size_t a = 0; a < lf.size(); ++a)
                if (!taken.count(a)) t.fields.push_back(lf[a]);
            for (size_t b = 0; b < lg.size(); ++b)
                if (!used[b]) t.fields.push_back(lg[b]);
            out.push_back(std::move(t));
            return;
        }
        rec(i + 1);  // leave leg i unmatched
        if (pairs.size() == max_pairs) return;
        for (size_t b = 0; b < lg.size(); ++b) {
            if (used[b] || lg[b].sym.species == lf[i].sym.species) continue;
            used[b] = true;
            pairs.emplace_back(i, b);
            rec(i + 1);
            pairs.pop_back();
            used[b] = false;
        }
    };
    rec(0);
}

OperatorExpr star_generic(const OperatorExpr& f, const OperatorExpr& g,
                          KernelKind kind, size_t min_pairs = 0,
                          size_t max_pairs = static_cast<size_t>(-1)) {
    OperatorExpr r;
    OperatorExpr cf = canonicalize(f), cg = canonicalize(g);
    for (const auto& tf : cf.terms)
        for (const auto& tg : cg.terms)
            contract_pair(tf, tg, kind, min_pairs, max_pairs, r.terms);
    return canonicalize(r);
}

}  // namespace

OperatorExpr star_product(const OperatorExpr& f, const OperatorExpr& g) {
    return star_generic(f, g, KernelKind::DeltaPlus);
}

OperatorExpr feynman_star_product(const OperatorExpr& f, const OperatorExpr& g) {
    return star_generic(f, g, KernelKind::DeltaFeynman);
}

OperatorExpr pointwise_product(const OperatorExpr& f, const OperatorExpr& g) {
    OperatorExpr r;
    OperatorExpr cf = canonicalize(f), cg = canonicalize(g);
    for (const auto& tf : cf.terms)
        for (const auto& tg : cg.terms) {
            OpTerm t = tg;
            quarantine_term_dummies(t);
            OpTerm n;
            n.c = tf.c * t.c;
            n.kernels = tf.kernels;
            n.kernels.insert(n.kernels.end(), t.kernels.begin(), t.kernels.end());
            n.fields = tf.fields;
            n.fields.insert(n.fields.end(), t.fields.begin(), t.fields.end());
            r.terms.push_back(std::move(n));
        }
    return canonicalize(r);
}

OperatorExpr star_commutator(const OperatorExpr& f, const OperatorExpr& g) {
    OperatorExpr c = star_product(f, g) - star_product(g, f);
    // Resolve Dplus factors running against the label order through
    // Dplus(-u) = Dplus(u) - i Dcomm(u).
    std::vector<OpTerm> work = c.terms, done;
    while (!work.empty()) {
        OpTerm t = std::move(work.back());
        work.pop_back();
        size_t i = find_anticanonical_deltaplus(t.kernels);
        if (i == static_cast<size_t>(-1)) {
            done.push_back(std::move(t));
            continue;
        }
        std::swap(t.kernels[i].a, t.kernels[i].b);
        OpTerm comm = t;
        comm.kernels[i].kind = KernelKind::DeltaCommutator;
        comm.c = comm.c * ScalarCoeff::minus_i();
        work.push_back(std::move(t));
        work.push_back(std::move(comm));
    }
    return canonicalize(OperatorExpr{std::move(done)});
}

OperatorExpr poisson_bracket(const OperatorExpr& f, const OperatorExpr& g) {
    return star_generic(f, g, KernelKind::DeltaCommutator, 1, 1);
}

OperatorExpr unrenormalized_tproduct(const std::vector<FieldPolynomial>& args) {
    std::set<Label> seen;
    for (const auto& p : args) {
        std::set<Label> mine;
        for (const auto& t : p.terms)
            for (const auto& f : t.factors) mine.insert(f.point);
        for (const auto& l : mine)
            if (!seen.insert(l).second)
                throw std::invalid_argument(
                    "unrenormalized_tproduct: repeated point label '" + l + "'");
    }
    OperatorExpr acc = OperatorExpr::unit();
    for (const auto& p : args) acc = feynman_star_product(acc, OperatorExpr::from(p));
    return acc;
}

DistExpr vev(const OperatorExpr& e) {
    DistExpr r;
    for (const auto& t : canonicalize(e).terms)
        if (t.fields.empty()) r.terms.push_back(DistTerm{t.c, t.kernels});
    return canonicalize(r);
}

OperatorExpr hbar_part(const OperatorExpr& e, int power) {
    OperatorExpr r;
    for (const auto& t : canonicalize(e).terms)
        if (t.c.hbar_power == power) r.terms.push_back(t);
    return r;
}

OperatorExpr theta(const OperatorExpr& e) {
    OperatorExpr r;
    for (const auto& t : e.terms) {
        int q = 0;
        for (const auto& f : t.fields) {
            if (f.sym.derivs.size() > 1)
                throw std::domain_error(
                    "theta: defined only on first-derivative field factors");
            q += charge_of(f.sym.species);
        }
        if (q == 0) continue;
        r.terms.push_back(OpTerm{t.c * ScalarCoeff::integer(q), t.kernels, t.fields});
    }
    return canonicalize(r);
}

OperatorExpr charge_conjugate(const OperatorExpr& e, const ScalarCoeff& eta) {
    OperatorExpr r;
    for (const auto& t : e.terms) {
        OpTerm n;
        n.c = t.c;
        n.kernels = t.kernels;
        for (auto f : t.fields) {
            if (f.sym.species == Species::Phi) {
                f.sym.species = Species::PhiStar;
                n.c = n.c * eta;
            } else {
                f.sym.species = Species::Phi;
                n.c = n.c * eta.conjugate();
            }
            n.fields.push_back(std::move(f));
        }
        r.terms.push_back(std::move(n));
    }
    return canonicalize(r);
}

// ---- full-contraction enumeration ------------------------------------------

bool DiagramEdge::operator==(const DiagramEdge& o) const {
    return a == o.a && b == o.b && derivs == o.derivs;
}

bool DiagramEdge::operator<(const DiagramEdge& o) const {
    if (a != o.a) return label_less(a, o.a);
    if (b != o.b) return label_less(b, o.b);
    return derivs < o.derivs;
}

std::vector<ContractionDiagram> enumerate_full_contractions(
    const std::vector<FieldMonomial>& args) {
    struct Leg {
        size_t pos;
        Label point;
        std::vector<Index> derivs;
    };
    std::vector<Leg> phis, stars;
    ScalarCoeff base = ScalarCoeff::one();
    for (size_t i = 0; i < args.size(); ++i) {
        base = base * args[i].coeff;
        for (const auto& f : args[i].factors) {
            Leg l{i, f.point, f.sym.derivs};
            (f.sym.species == Species::Phi ? phis : stars).push_back(std::move(l));
        }
    }
    if (phis.size() != stars.size() || base.is_zero()) return {};

    struct DiagramKey {
        std::vector<DiagramEdge> edges;
        bool operator<(const DiagramKey& o) const { return edges < o.edges; }
    };
    struct Tally {
        long long count = 0;
        std::vector<std::pair<size_t, size_t>> first_pairing;
    };
    std::map<DiagramKey, Tally> counts;

    std::vector<bool> used(stars.size(), false);
    std::vector<DiagramEdge> edges;
    std::vector<std::pair<size_t, size_t>> pairing;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == phis.size()) {
            auto sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            Tally& t = counts[DiagramKey{std::move(sorted)}];
            if (t.count == 0) t.first_pairing = pairing;
            ++t.count;
            return;
        }
        for (size_t b = 0; b < stars.size(); ++b) {
            if (used[b] || stars[b].pos == phis[i].pos) continue;
            used[b] = true;
            DiagramEdge e;
            const bool fwd = label_less(phis[i].point, stars[b].point);
            e.a = fwd ? phis[i].point : stars[b].point;
            e.b = fwd ? stars[b].point : phis[i].point;
            for (const auto& ix : phis[i].derivs) e.derivs.emplace_back(phis[i].point, ix);
            for (const auto& ix : stars[b].derivs)
                e.derivs.emplace_back(stars[b].point, ix);
            std::sort(e.derivs.begin(), e.derivs.end());
            edges.push_back(std::move(e));
            pairing.emplace_back(i, b);
            rec(i + 1);
            pairing.pop_back();
            edges.pop_back();
            used[b] = false;
        }
    };
    rec(0);

    std::vector<ContractionDiagram> out;
    for (auto& [key, tally] : counts) {
        const long long mult = tally.count;
        ContractionDiagram d;
        d.edges = key.edges;
        d.multiplicity = mult;
        d.representative_positions = tally.first_pairing;
        for (auto [pi, si] : tally.first_pairing) {
            LocatedField lf{phis[pi].point,
                            BasicFieldSymbol{Species::Phi, phis[pi].derivs}};
            LocatedField rf{stars[si].point,
                            BasicFieldSymbol{Species::PhiStar, stars[si].derivs}};
            d.representative_pairing.emplace_back(std::move(lf), std::move(rf));
        }
        long long denom = 1;
        size_t i = 0;
        while (i < d.edges.size()) {
            size_t j = i;
            while (j < d.edges.size() && d.edges[j] == d.edges[i]) ++j;
            for (size_t k = 2; k <= j - i; ++k) denom *= static_cast<long long>(k);
            i = j;
        }
        d.grouped_multiplicity = (mult % denom == 0) ? mult / denom : mult;
        d.coefficient = base * ScalarCoeff::integer(mult) *
                        ScalarCoeff::hbar(static_cast<int>(d.edges.size()));
        out.push_back(std::move(d));
    }
    return out;
}

DistExpr contraction_vev_monomials(const std::vector<FieldMonomial>& args) {
    DistExpr r;
    for (const auto& d : enumerate_full_contractions(args)) {
        DistTerm t;
        t.c = d.coefficient;
        for (const auto& e : d.edges) {
            KernelFactor k;
            k.kind = KernelKind::DeltaFeynman;
            k.a = e.a;
            k.b = e.b;
            k.derivs = e.derivs;
            t.kernels.push_back(std::move(k));
        }
        r.terms.push_back(std::move(t));
    }
    return canonicalize(r);
}

DistExpr contraction_vev(const std::vector<FieldPolynomial>& args) {
    std::vector<FieldMonomial> chosen(args.size());
    DistExpr total;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == args.size()) {
            total = total + contraction_vev_monomials(chosen);
            return;
        }
        for (const auto& m : args[i].terms) {
            chosen[i] = m;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

OperatorExpr causal_wick_expand(const std::vector<FieldMonomial>& args,
                                const TProductOracle& t_oracle) {
    std::vector<std::vector<Submonomial>> splits;
    splits.reserve(args.size());
    for (const auto& a : args) splits.push_back(submonomials(a));

    OperatorExpr total;
    std::vector<size_t> pick(args.size(), 0);
    while (true) {
        std::vector<FieldMonomial> contracted;
        std::vector<LocatedField> spectators;
        long factor = 1;
        for (size_t i = 0; i < args.size(); ++i) {
            const Submonomial& s = splits[i][pick[i]];
            contracted.push_back(s.contracted);
            spectators.insert(spectators.end(), s.spectator.factors.begin(),
                              s.spectator.factors.end());
            factor *= s.factor;
        }
        DistExpr t = t_oracle(contracted);
        for (const auto& dt : t.terms)
            total.terms.push_back(OpTerm{dt.c * ScalarCoeff::integer(factor),
                                         dt.kernels, spectators});
        size_t i = 0;
        while (i < args.size() && pick[i] + 1 == splits[i].size()) pick[i++] = 0;
        if (i == args.size()) break;
        ++pick[i];
    }
    return canonicalize(total);
}

}  // namespace wick

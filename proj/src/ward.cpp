#include "wick/ward.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wick {

std::string verdict_name(Verdict v) {
    return v == Verdict::Verified ? "verified" : "anomaly-candidate";
}

namespace {

void validate_args(const std::vector<FieldPolynomial>& ps, const Label& y) {
    if (ps.empty()) throw std::invalid_argument("MWI: needs at least one argument");
    for (const auto& p : ps) {
        if (!in_first_derivative_class(p))
            throw std::invalid_argument(
                "MWI: arguments must be polynomials in the basic fields and their "
                "first derivatives");
        for (const auto& t : p.terms)
            for (const auto& f : t.factors)
                if (f.point == y)
                    throw std::invalid_argument("MWI: contact label '" + y +
                                                "' collides with an argument label");
    }
}

std::set<Index> used_indices(const std::vector<FieldPolynomial>& ps) {
    std::set<Index> used;
    for (const auto& p : ps)
        for (const auto& t : p.terms)
            for (const auto& f : t.factors)
                for (const auto& ix : f.sym.derivs) used.insert(ix);
    return used;
}

std::optional<Label> arg_label(const FieldPolynomial& p) {
    std::set<Label> pts;
    for (const auto& t : p.terms)
        for (const auto& f : t.factors) pts.insert(f.point);
    if (pts.empty()) return std::nullopt;
    if (pts.size() > 1)
        throw std::invalid_argument("MWI: argument spans several labels");
    return *pts.begin();
}

/// The charge number shared by all monomials, if there is one.
std::optional<int> uniform_charge(const FieldPolynomial& p) {
    std::optional<int> q;
    for (const auto& t : p.terms) {
        int c = charge_number(t);
        if (!q) q = c;
        else if (*q != c) return std::nullopt;
    }
    return q;
}

bool contact_supported(const DistExpr& residual, const Label& contact) {
    for (const auto& t : residual.terms) {
        bool has = false;
        for (const auto& k : t.kernels)
            if (k.kind == KernelKind::DiracDelta && k.depends_on(contact)) has = true;
        if (!has) return false;
    }
    return true;
}

}  // namespace

DistExpr mwi_reduce(const DistExpr& e, const Label& contact) {
    DistExpr cur = canonicalize(e);
    for (int iter = 0; iter < 12; ++iter) {
        DistExpr next = canonicalize(
            delta_support_reduce(apply_klein_gordon(cur), contact));
        if ((next - cur).is_zero()) return next;
        cur = std::move(next);
    }
    throw std::logic_error("mwi_reduce: rewrite pipeline did not reach a fixpoint");
}

DistExpr build_mwi_lhs(const std::vector<FieldPolynomial>& ps, const Label& y) {
    validate_args(ps, y);
    Index mu = fresh_index(ps, "mu");
    std::vector<FieldPolynomial> args = ps;
    args.push_back(noether_current(mu, y));
    DistExpr t = vev(unrenormalized_tproduct(args));
    return mwi_reduce(differentiate(t, y, mu), y);
}

namespace {

struct RhsBuild {
    DistExpr value;
    std::vector<ContactTerm> contacts;
};

RhsBuild build_rhs_with_contacts(const std::vector<FieldPolynomial>& ps,
                                 const Label& y, bool with_diagrams) {
    validate_args(ps, y);
    RhsBuild out;
    out.value = DistExpr::zero();

    auto render_args = [](const std::vector<FieldPolynomial>& args) {
        std::vector<std::string> r;
        for (const auto& a : args) r.push_back(a.str());
        return r;
    };

    for (size_t l = 0; l < ps.size(); ++l) {
        auto xl = arg_label(ps[l]);
        if (!xl) continue;  // constant argument: both charge operators vanish

        // theta contribution: hbar delta(y - x_l) t(..., theta P_l, ...)
        FieldPolynomial th = theta(ps[l]);
        if (!th.is_zero()) {
            ContactTerm ct;
            ct.at = *xl;
            ct.origin = "theta";
            auto q = uniform_charge(ps[l]);
            std::vector<FieldPolynomial> targs = ps;
            if (q) {
                // eigenvector: keep the original argument, pull the eigenvalue out
                ct.coefficient = ScalarCoeff::hbar() * ScalarCoeff::integer(*q);
            } else {
                targs[l] = th;
                ct.coefficient = ScalarCoeff::hbar();
            }
            DistExpr t = vev(unrenormalized_tproduct(targs));
            ct.t_args = render_args(targs);
            ct.t_value = t;
            if (with_diagrams) {
                std::vector<FieldPolynomial> expanded = targs;
                // diagrams of the displayed t-product
                std::vector<FieldMonomial> monos;
                bool monomial_tuple = true;
                for (const auto& a : expanded) {
                    if (a.terms.size() != 1) { monomial_tuple = false; break; }
                    monos.push_back(a.terms[0]);
                }
                if (monomial_tuple) ct.diagrams = enumerate_full_contractions(monos);
            }
            DistExpr contact = DistExpr::single(
                ct.coefficient, {make_kernel(KernelKind::DiracDelta, y, *xl)});
            out.value = out.value + contact * t;
            out.contacts.push_back(std::move(ct));
        }

        // theta_mu contribution: -hbar d^nu_y [ delta(y - x_l) t(..., Q, ...) ]
        for (const auto& [nu, q_mono] : theta_mu(ps[l])) {
            FieldMonomial stripped = q_mono;
            ScalarCoeff qc = stripped.coeff;
            stripped.coeff = ScalarCoeff::one();

            std::vector<FieldPolynomial> targs = ps;
            targs[l] = FieldPolynomial{stripped};
            DistExpr t = vev(unrenormalized_tproduct(targs));

            ContactTerm ct;
            ct.at = *xl;
            ct.origin = "theta_mu";
            ct.coefficient = -(ScalarCoeff::hbar() * qc);
            ct.deriv_index = nu;
            ct.t_args = render_args(targs);
            ct.t_value = t;
            if (with_diagrams) {
                std::vector<FieldMonomial> monos;
                bool monomial_tuple = true;
                for (const auto& a : targs) {
                    if (a.terms.size() != 1) { monomial_tuple = false; break; }
                    monos.push_back(a.terms[0]);
                }
                if (monomial_tuple) ct.diagrams = enumerate_full_contractions(monos);
            }
            KernelFactor dk = make_kernel(KernelKind::DiracDelta, y, *xl);
            dk.derivs.emplace_back(y, nu);
            out.value = out.value + DistExpr::single(ct.coefficient, {dk}) * t;
            out.contacts.push_back(std::move(ct));
        }
    }
    out.value = mwi_reduce(out.value, y);
    return out;
}

}  // namespace

DistExpr build_mwi_rhs(const std::vector<FieldPolynomial>& ps, const Label& y) {
    return build_rhs_with_contacts(ps, y, false).value;
}

MwiReport check_mwi(const std::vector<FieldPolynomial>& ps, const Label& y,
                    bool with_diagrams, bool with_trace) {
    validate_args(ps, y);
    MwiReport rep;
    for (const auto& p : ps) {
        rep.args.push_back(p.str());
        auto l = arg_label(p);
        if (l) rep.labels.push_back(*l);
    }
    rep.contact = y;

    if (with_trace) {
        Index mu = fresh_index(ps, "mu");
        std::vector<FieldPolynomial> args = ps;
        args.push_back(noether_current(mu, y));
        DistExpr t = vev(unrenormalized_tproduct(args));
        rep.trace.emplace_back("vev T(P..., j(y))", t.str());
        DistExpr d = differentiate(t, y, mu);
        rep.trace.emplace_back("d_mu^y applied", d.str());
        DistExpr kg = apply_klein_gordon(d);
        rep.trace.emplace_back("Klein-Gordon contact terms", kg.str());
        DistExpr red = delta_support_reduce(kg, y);
        rep.trace.emplace_back("delta support reduced", red.str());
    }

    rep.lhs = build_mwi_lhs(ps, y);
    if (with_diagrams) {
        bool monomial_tuple = true;
        std::vector<FieldMonomial> monos;
        for (const auto& p : ps) {
            if (p.terms.size() != 1) { monomial_tuple = false; break; }
            monos.push_back(p.terms[0]);
        }
        if (monomial_tuple) {
            Index mu = fresh_index(ps, "mu");
            for (const auto& summand : noether_current(mu, y).terms) {
                auto withj = monos;
                withj.push_back(summand);
                for (auto& d : enumerate_full_contractions(withj))
                    rep.lhs_diagrams.push_back(std::move(d));
            }
        }
    }
    auto rhs = build_rhs_with_contacts(ps, y, with_diagrams);
    rep.rhs = rhs.value;
    rep.contacts = std::move(rhs.contacts);
    rep.residual = canonicalize(rep.lhs - rep.rhs);
    rep.verdict = rep.residual.terms.empty() ? Verdict::Verified
                                             : Verdict::AnomalyCandidate;
    rep.residual_contact_supported = contact_supported(rep.residual, y);
    rep.index_sets_match = free_indices(rep.lhs) == free_indices(rep.rhs) ||
                           rep.lhs.is_zero() || rep.rhs.is_zero();
    return rep;
}

MwiReport compare_mwi_sides(DistExpr lhs, DistExpr rhs, const Label& contact) {
    MwiReport rep;
    rep.contact = contact;
    rep.lhs = mwi_reduce(lhs, contact);
    rep.rhs = mwi_reduce(rhs, contact);
    rep.residual = canonicalize(rep.lhs - rep.rhs);
    rep.verdict = rep.residual.terms.empty() ? Verdict::Verified
                                             : Verdict::AnomalyCandidate;
    rep.residual_contact_supported = contact_supported(rep.residual, contact);
    return rep;
}

ExclusionCheck furry_check(const std::vector<FieldPolynomial>& args,
                           const ScalarCoeff& eta) {
    int odd = 0;
    for (const auto& p : args) {
        auto ev = charge_conjugation_eigenvalue(p, eta);
        if (!ev)
            throw std::invalid_argument(
                "furry_check: argument is not a charge-conjugation eigenvector: " +
                p.str());
        if (*ev == -1) ++odd;
    }
    return (odd % 2 == 1) ? ExclusionCheck::ForcedZero : ExclusionCheck::NotApplicable;
}

ExclusionCheck charge_conservation_check(const std::vector<FieldPolynomial>& args) {
    // Forced zero iff no choice of monomials balances the total charge.
    std::set<int> sums{0};
    for (const auto& p : args) {
        std::set<int> next;
        for (const auto& t : p.terms)
            for (int s : sums) next.insert(s + charge_number(t));
        sums = std::move(next);
        if (sums.empty()) break;  // zero polynomial: t vanishes trivially
    }
    return sums.count(0) ? ExclusionCheck::NotApplicable : ExclusionCheck::ForcedZero;
}

int total_charge(const std::vector<FieldPolynomial>& args) {
    int q = 0;
    for (const auto& p : args) {
        auto u = uniform_charge(p);
        if (!u) throw std::invalid_argument("total_charge: mixed-charge argument");
        q += *u;
    }
    return q;
}

Index fresh_index(const std::vector<FieldPolynomial>& ps, const std::string& base) {
    auto used = used_indices(ps);
    if (!used.count(base)) return base;
    for (int k = 0;; ++k) {
        Index cand = base + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

Label fresh_label(const std::vector<FieldPolynomial>& ps, const std::string& base) {
    std::set<Label> used;
    for (const auto& p : ps)
        for (const auto& t : p.terms)
            for (const auto& f : t.factors) used.insert(f.point);
    if (!used.count(base)) return base;
    for (int k = 0;; ++k) {
        Label cand = base + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

}  // namespace wick

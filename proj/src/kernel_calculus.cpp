#include "wick/kernel_calculus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wick {

std::string kernel_kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::DeltaPlus: return "Dplus";
        case KernelKind::DeltaFeynman: return "DF";
        case KernelKind::DeltaCommutator: return "Dcomm";
        case KernelKind::DiracDelta: return "delta";
    }
    return "?";
}

namespace {

int kind_rank(KernelKind k) {
    switch (k) {
        case KernelKind::DiracDelta: return 0;
        case KernelKind::DeltaPlus: return 1;
        case KernelKind::DeltaCommutator: return 2;
        case KernelKind::DeltaFeynman: return 3;
    }
    return 4;
}

// Factor-level normal form; returns the accumulated sign.
int normalize_factor(KernelFactor& f) {
    int sign = 1;
    if (f.kind != KernelKind::DeltaPlus && label_less(f.b, f.a)) {
        std::swap(f.a, f.b);
        if (f.kind == KernelKind::DeltaCommutator) sign = -sign;
    }
    const Label des = f.designated_label();
    for (auto& [lab, ix] : f.derivs) {
        if (lab == des) continue;
        if (lab != f.a && lab != f.b)
            throw std::logic_error("KernelFactor: derivative at foreign label");
        lab = des;
        sign = -sign;
    }
    int total_boxes = 0;
    for (auto& [lab, n] : f.boxes) {
        if (n < 0) throw std::logic_error("KernelFactor: negative box count");
        total_boxes += n;
    }
    f.boxes.clear();
    if (total_boxes > 0) f.boxes[des] = total_boxes;
    std::sort(f.derivs.begin(), f.derivs.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });
    return sign;
}

std::map<Index, int> index_occurrences(const std::vector<KernelFactor>& kernels,
                                       const std::vector<LocatedField>& fields) {
    std::map<Index, int> occ;
    for (const auto& k : kernels)
        for (const auto& [lab, ix] : k.derivs) ++occ[ix];
    for (const auto& f : fields)
        for (const auto& ix : f.sym.derivs) ++occ[ix];
    return occ;
}

int compare_fields(const std::vector<LocatedField>& x,
                   const std::vector<LocatedField>& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = 0; i < x.size(); ++i) {
        int c = x[i].compare(y[i]);
        if (c != 0) return c;
    }
    return 0;
}

void rename_indices(std::vector<KernelFactor>& kernels,
                    std::vector<LocatedField>& fields,
                    const std::map<Index, Index>& ren) {
    for (auto& k : kernels)
        for (auto& [lab, ix] : k.derivs) {
            auto it = ren.find(ix);
            if (it != ren.end()) ix = it->second;
        }
    for (auto& f : fields)
        for (auto& ix : f.sym.derivs) {
            auto it = ren.find(ix);
            if (it != ren.end()) ix = it->second;
        }
}

void sort_term(std::vector<KernelFactor>& kernels, std::vector<LocatedField>& fields) {
    for (auto& k : kernels)
        std::sort(k.derivs.begin(), k.derivs.end(),
                  [](const auto& x, const auto& y) { return x.second < y.second; });
    std::sort(kernels.begin(), kernels.end());
    std::sort(fields.begin(), fields.end());
}

}  // namespace

int KernelFactor::compare(const KernelFactor& o) const {
    if (kind != o.kind) return kind_rank(kind) < kind_rank(o.kind) ? -1 : 1;
    if (a != o.a) return label_less(a, o.a) ? -1 : 1;
    if (b != o.b) return label_less(b, o.b) ? -1 : 1;
    if (derivs != o.derivs) return derivs < o.derivs ? -1 : 1;
    std::vector<std::pair<Label, int>> bx(boxes.begin(), boxes.end());
    std::vector<std::pair<Label, int>> by(o.boxes.begin(), o.boxes.end());
    if (bx != by) return bx < by ? -1 : 1;
    return 0;
}

std::string KernelFactor::str() const {
    std::string s;
    for (const auto& [lab, n] : boxes)
        for (int i = 0; i < n; ++i) s += "box@" + lab + " ";
    for (const auto& [lab, ix] : derivs) s += "d[" + ix + "]@" + lab + " ";
    s += kernel_kind_name(kind) + "(" + a + "-" + b + ")";
    return s;
}

KernelFactor make_kernel(KernelKind kind, Label a, Label b,
                         std::vector<std::pair<Label, Index>> derivs) {
    KernelFactor f;
    f.kind = kind;
    f.a = std::move(a);
    f.b = std::move(b);
    f.derivs = std::move(derivs);
    return f;
}

void canonicalize_term_inplace(std::vector<KernelFactor>& kernels,
                               std::vector<LocatedField>& fields, ScalarCoeff& coeff) {
    for (auto& k : kernels)
        if (normalize_factor(k) < 0) coeff = -coeff;

    // A contracted pair sitting on one kernel factor is a d'Alembertian.
    auto occ = index_occurrences(kernels, fields);
    for (auto& k : kernels) {
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = 0; i + 1 < k.derivs.size() && !again; ++i)
                for (size_t j = i + 1; j < k.derivs.size() && !again; ++j) {
                    const Index& ix = k.derivs[i].second;
                    if (k.derivs[j].second != ix || occ[ix] != 2) continue;
                    ++k.boxes[k.designated_label()];
                    k.derivs.erase(k.derivs.begin() + j);
                    k.derivs.erase(k.derivs.begin() + i);
                    occ.erase(ix);
                    again = true;
                }
        }
    }

    occ = index_occurrences(kernels, fields);
    std::vector<Index> dummies;
    std::set<Index> frees;
    for (const auto& [ix, n] : occ) {
        if (n == 1) frees.insert(ix);
        else if (n == 2) dummies.push_back(ix);
        else
            throw std::logic_error("canonicalize: index '" + ix +
                                   "' occurs more than twice in a term");
    }

    if (dummies.empty()) {
        sort_term(kernels, fields);
        return;
    }
    if (dummies.size() > 8)
        throw std::logic_error("canonicalize: too many contracted index pairs");

    // Fresh canonical dummy names, avoiding any free symbol in this term.
    std::vector<Index> names;
    for (int k = 0; names.size() < dummies.size(); ++k) {
        Index cand = "$" + std::to_string(k);
        if (!frees.count(cand)) names.push_back(cand);
    }

    // The assignment of canonical names is fixed by minimizing the sorted
    // term over all renamings; term sizes keep this cheap.
    std::vector<size_t> perm(dummies.size());
    std::iota(perm.begin(), perm.end(), 0);
    bool first = true;
    std::vector<KernelFactor> best_k;
    std::vector<LocatedField> best_f;
    do {
        std::map<Index, Index> ren;
        for (size_t i = 0; i < dummies.size(); ++i) ren[dummies[i]] = names[perm[i]];
        auto ks = kernels;
        auto fs = fields;
        rename_indices(ks, fs, ren);
        sort_term(ks, fs);
        int c = first ? -1 : compare_kernel_lists(ks, best_k);
        if (c == 0) c = compare_fields(fs, best_f);
        if (first || c < 0) {
            best_k = std::move(ks);
            best_f = std::move(fs);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    kernels = std::move(best_k);
    fields = std::move(best_f);
}

int compare_kernel_lists(const std::vector<KernelFactor>& x,
                         const std::vector<KernelFactor>& y) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (size_t i = 0; i < x.size(); ++i) {
        int c = x[i].compare(y[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string kernel_list_str(const std::vector<KernelFactor>& ks) {
    std::string s;
    size_t i = 0;
    while (i < ks.size()) {
        size_t j = i;
        while (j < ks.size() && ks[j] == ks[i]) ++j;
        if (!s.empty()) s += "*";
        s += ks[i].str();
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

DistExpr DistExpr::constant(ScalarCoeff c) {
    if (c.is_zero()) return {};
    return DistExpr{{DistTerm{std::move(c), {}}}};
}

DistExpr DistExpr::single(ScalarCoeff c, std::vector<KernelFactor> ks) {
    return DistExpr{{DistTerm{std::move(c), std::move(ks)}}};
}

bool DistExpr::is_zero() const { return canonicalize(*this).terms.empty(); }

DistExpr DistExpr::operator+(const DistExpr& o) const {
    DistExpr r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return canonicalize(r);
}

DistExpr DistExpr::operator-(const DistExpr& o) const {
    return *this + o.scaled(ScalarCoeff::integer(-1));
}

namespace {

// Dummy names of the right operand must not collide with the left's.
void quarantine_dummies(std::vector<KernelFactor>& ks, std::vector<LocatedField>& fs) {
    std::map<Index, Index> ren;
    auto occ = index_occurrences(ks, fs);
    for (const auto& [ix, n] : occ)
        if (n == 2 && !ix.empty() && ix[0] == '$') ren[ix] = "$r" + ix.substr(1);
    if (!ren.empty()) rename_indices(ks, fs, ren);
}

}  // namespace

DistExpr DistExpr::operator*(const DistExpr& o) const {
    DistExpr r;
    DistExpr rhs = canonicalize(o);
    for (const auto& ta : canonicalize(*this).terms)
        for (auto tb : rhs.terms) {
            std::vector<LocatedField> nofields;
            quarantine_dummies(tb.kernels, nofields);
            DistTerm t;
            t.c = ta.c * tb.c;
            t.kernels = ta.kernels;
            t.kernels.insert(t.kernels.end(), tb.kernels.begin(), tb.kernels.end());
            r.terms.push_back(std::move(t));
        }
    return canonicalize(r);
}

DistExpr DistExpr::scaled(const ScalarCoeff& c) const {
    DistExpr r;
    for (const auto& t : terms) r.terms.push_back(DistTerm{t.c * c, t.kernels});
    return canonicalize(r);
}

bool DistExpr::operator==(const DistExpr& o) const {
    return (*this - o).is_zero();
}

std::string DistExpr::str() const {
    DistExpr c = canonicalize(*this);
    if (c.terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c.terms.size(); ++i) {
        const auto& t = c.terms[i];
        std::string body = term_str(t.c, kernel_list_str(t.kernels));
        if (i == 0) s = body;
        else if (!body.empty() && body[0] == '-') s += " - " + body.substr(1);
        else s += " + " + body;
    }
    return s;
}

DistExpr canonicalize(const DistExpr& e) {
    struct Key {
        std::vector<KernelFactor> kernels;
        int hb, m2;
        bool operator<(const Key& o) const {
            if (hb != o.hb) return hb < o.hb;
            if (m2 != o.m2) return m2 < o.m2;
            return compare_kernel_lists(kernels, o.kernels) < 0;
        }
    };
    std::map<Key, ScalarCoeff> acc;
    for (const auto& t : e.terms) {
        if (t.c.is_zero()) continue;
        DistTerm w = t;
        std::vector<LocatedField> nofields;
        canonicalize_term_inplace(w.kernels, nofields, w.c);
        Key k{std::move(w.kernels), w.c.hbar_power, w.c.mass2_power};
        auto it = acc.find(k);
        if (it == acc.end()) acc.emplace(std::move(k), w.c);
        else it->second = it->second.add_like(w.c);
    }
    DistExpr out;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.terms.push_back(DistTerm{c, k.kernels});
    return out;
}

DistExpr differentiate(const DistExpr& e, const Label& label, const Index& index) {
    DistExpr r;
    for (const auto& t : e.terms) {
        for (size_t i = 0; i < t.kernels.size(); ++i) {
            if (!t.kernels[i].depends_on(label)) continue;
            DistTerm n = t;
            n.kernels[i].derivs.emplace_back(label, index);
            r.terms.push_back(std::move(n));
        }
    }
    return canonicalize(r);
}

DistExpr apply_klein_gordon(const DistExpr& e) {
    std::vector<DistTerm> work = canonicalize(e).terms;
    std::vector<DistTerm> done;
    while (!work.empty()) {
        DistTerm t = std::move(work.back());
        work.pop_back();
        size_t i = 0;
        for (; i < t.kernels.size(); ++i)
            if (!t.kernels[i].boxes.empty()) break;
        if (i == t.kernels.size()) {
            done.push_back(std::move(t));
            continue;
        }
        KernelFactor& f = t.kernels[i];
        if (f.kind == KernelKind::DiracDelta)
            throw std::domain_error("apply_klein_gordon: box acting on a Dirac delta");
        auto pos = f.boxes.begin();
        if (--pos->second == 0) f.boxes.erase(pos);
        // box K = -m2 K (- i delta for the Feynman propagator)
        DistTerm massive = t;
        massive.c = massive.c * (-ScalarCoeff::mass2());
        work.push_back(std::move(massive));
        if (f.kind == KernelKind::DeltaFeynman) {
            DistTerm contact = t;
            contact.c = contact.c * ScalarCoeff::minus_i();
            contact.kernels[i].kind = KernelKind::DiracDelta;
            work.push_back(std::move(contact));
        }
    }
    return canonicalize(DistExpr{std::move(done)});
}

int scaling_degree_delta(int deriv_order, int k) {
    if (k < 1) throw std::invalid_argument("scaling_degree_delta: needs k >= 1");
    if (deriv_order < 0)
        throw std::invalid_argument("scaling_degree_delta: negative derivative order");
    return k + deriv_order;
}

int scaling_degree_constant() { return 0; }

namespace {

enum class Subst { Unchanged, Changed, Dies };

// Substitutes `from` -> `to` in one factor. A propagator whose argument
// collapses onto a single point is subtracted with its whole derivative jet:
// the contact extension is chosen so that these coincident products carry no
// contact term, which is the renormalization freedom the identity admits.
Subst substitute_label(KernelFactor& g, const Label& from, const Label& to) {
    if (!g.depends_on(from)) return Subst::Unchanged;
    const Label& other = g.a == from ? g.b : g.a;
    if (other == to)
        return g.kind == KernelKind::DiracDelta ? Subst::Unchanged : Subst::Dies;
    if (g.a == from) g.a = to;
    if (g.b == from) g.b = to;
    for (auto& [lab, ix] : g.derivs)
        if (lab == from) lab = to;
    auto it = g.boxes.find(from);
    if (it != g.boxes.end()) {
        g.boxes[to] += it->second;
        g.boxes.erase(it);
    }
    return Subst::Changed;
}

class DeltaReducer {
  public:
    explicit DeltaReducer(Label contact) : contact_(std::move(contact)) {}

    std::vector<DistTerm> reduce(DistTerm t) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t i = 0; i < t.kernels.size(); ++i) {
                KernelFactor& f = t.kernels[i];
                if (f.kind != KernelKind::DiracDelta || f.a == f.b) continue;
                if (f.a != contact_ && f.b != contact_) return {};  // disjoint supports
                const Label x = f.a == contact_ ? f.b : f.a;
                if (!f.boxes.empty()) continue;  // blocked; KG resolves boxes first
                if (f.derivs.empty()) {
                    for (size_t j = 0; j < t.kernels.size(); ++j) {
                        if (j == i) continue;
                        switch (substitute_label(t.kernels[j], contact_, x)) {
                            case Subst::Dies: return {};
                            case Subst::Changed: progress = true; break;
                            case Subst::Unchanged: break;
                        }
                    }
                } else if (has_contact_companion(t, i)) {
                    return exchange_derivatives(std::move(t), i, x);
                }
            }
        }
        return {std::move(t)};
    }

  private:
    bool has_contact_companion(const DistTerm& t, size_t i) const {
        for (size_t j = 0; j < t.kernels.size(); ++j)
            if (j != i && t.kernels[j].depends_on(contact_)) return true;
        return false;
    }

    // d^D delta(x - y) R(y) = sum over S subset of D of (-1)^|S|
    // d^{D\S} delta(x - y) (d^S R)(x), with y the contact variable.
    std::vector<DistTerm> exchange_derivatives(DistTerm t, size_t i, const Label& x) {
        KernelFactor delta = t.kernels[i];
        t.kernels.erase(t.kernels.begin() + i);
        // Express the delta's derivatives at the contact label.
        ScalarCoeff base = t.c;
        std::vector<Index> d_indices;
        for (auto& [lab, ix] : delta.derivs) {
            if (lab != contact_) base = -base;
            d_indices.push_back(ix);
        }
        delta.derivs.clear();

        std::vector<DistTerm> out;
        const size_t n = d_indices.size();
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            DistExpr part{{DistTerm{ScalarCoeff::one(), t.kernels}}};
            KernelFactor d = delta;
            int sign = 1;
            for (size_t k = 0; k < n; ++k) {
                if (mask & (size_t{1} << k)) {
                    part = differentiate(part, contact_, d_indices[k]);
                    sign = -sign;
                } else {
                    d.derivs.emplace_back(contact_, d_indices[k]);
                }
            }
            for (auto& pt : part.terms) {
                bool dead = false;
                for (auto& g : pt.kernels)
                    if (substitute_label(g, contact_, x) == Subst::Dies) dead = true;
                if (dead) continue;
                DistTerm nt;
                nt.c = base * pt.c * ScalarCoeff::integer(sign);
                nt.kernels = std::move(pt.kernels);
                nt.kernels.push_back(d);
                auto more = reduce(std::move(nt));
                out.insert(out.end(), more.begin(), more.end());
            }
        }
        return out;
    }

    Label contact_;
};

}  // namespace

DistExpr delta_support_reduce(const DistExpr& e, std::optional<Label> contact) {
    DistExpr c = canonicalize(e);
    if (!contact) {
        for (const auto& t : c.terms)
            for (const auto& k : t.kernels) {
                if (k.kind != KernelKind::DiracDelta) continue;
                const Label& hi = label_less(k.a, k.b) ? k.b : k.a;
                if (!contact || label_less(*contact, hi)) contact = hi;
            }
        if (!contact) return c;  // no deltas at all
    }
    DeltaReducer red(*contact);
    DistExpr out;
    for (auto& t : c.terms) {
        auto reduced = red.reduce(t);
        out.terms.insert(out.terms.end(), reduced.begin(), reduced.end());
    }
    return canonicalize(out);
}

DistExpr relabel(const DistExpr& e, const std::map<Label, Label>& map) {
    DistExpr r = e;
    auto ren = [&](Label& l) {
        auto it = map.find(l);
        if (it != map.end()) l = it->second;
    };
    for (auto& t : r.terms)
        for (auto& k : t.kernels) {
            ren(k.a);
            ren(k.b);
            for (auto& [lab, ix] : k.derivs) ren(lab);
            std::map<Label, int> nb;
            for (auto& [lab, n] : k.boxes) {
                Label l2 = lab;
                ren(l2);
                nb[l2] += n;
            }
            k.boxes = std::move(nb);
        }
    return canonicalize(r);
}

size_t find_anticanonical_deltaplus(const std::vector<KernelFactor>& ks) {
    for (size_t i = 0; i < ks.size(); ++i)
        if (ks[i].kind == KernelKind::DeltaPlus && label_less(ks[i].b, ks[i].a))
            return i;
    return static_cast<size_t>(-1);
}

std::set<Index> free_indices(const DistExpr& e) {
    std::set<Index> frees;
    for (const auto& t : canonicalize(e).terms) {
        std::vector<LocatedField> nofields;
        auto occ = index_occurrences(t.kernels, nofields);
        for (const auto& [ix, n] : occ)
            if (n == 1) frees.insert(ix);
    }
    return frees;
}

}  // namespace wick

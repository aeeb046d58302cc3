#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wick/field_algebra.hpp"
#include "wick/scalar_coeff.hpp"

namespace wick {

enum class KernelKind { DeltaPlus, DeltaFeynman, DeltaCommutator, DiracDelta };

std::string kernel_kind_name(KernelKind k);

/// One symbolic kernel factor K(a - b) with derivative decorations and
/// unresolved d'Alembertians. Canonical form orients (a, b) by the label
/// order (except DeltaPlus, which has no exchange symmetry), moves every
/// derivative and box onto the later label of the pair, and tracks signs:
/// flipping the argument costs -1 for the commutator function and nothing
/// for the Feynman propagator and the Dirac delta; moving one derivative
/// across the difference argument costs -1.
struct KernelFactor {
    KernelKind kind = KernelKind::DeltaFeynman;
    Label a, b;                                   // argument a - b
    std::vector<std::pair<Label, Index>> derivs;  // decorations: d^index at label
    std::map<Label, int> boxes;                   // unresolved boxes per label

    bool depends_on(const Label& l) const { return a == l || b == l; }
    const Label& designated_label() const { return label_less(a, b) ? b : a; }
    int compare(const KernelFactor& o) const;
    bool operator==(const KernelFactor& o) const { return compare(o) == 0; }
    bool operator<(const KernelFactor& o) const { return compare(o) < 0; }
    std::string str() const;
};

KernelFactor make_kernel(KernelKind kind, Label a, Label b,
                         std::vector<std::pair<Label, Index>> derivs = {});

struct DistTerm {
    ScalarCoeff c;
    std::vector<KernelFactor> kernels;
};

/// Sum of scalar-coefficient kernel products. Values only ever depend on
/// label differences; free Lorentz indices appear once per term, dummies
/// exactly twice.
struct DistExpr {
    std::vector<DistTerm> terms;

    static DistExpr zero() { return {}; }
    static DistExpr constant(ScalarCoeff c);
    static DistExpr single(ScalarCoeff c, std::vector<KernelFactor> ks);

    bool is_zero() const;
    DistExpr operator+(const DistExpr& o) const;
    DistExpr operator-(const DistExpr& o) const;
    DistExpr operator*(const DistExpr& o) const;  // product of distributions
    DistExpr scaled(const ScalarCoeff& c) const;
    bool operator==(const DistExpr& o) const;
    std::string str() const;
};

/// Unique normal form: factor-level orientation and derivative placement,
/// dummy-index renaming, like-term collection. Idempotent.
DistExpr canonicalize(const DistExpr& e);

/// d^index at `label`, product rule over all factors depending on the label.
DistExpr differentiate(const DistExpr& e, const Label& label, const Index& index);

/// Resolves every unresolved box: box DF -> -m2 DF - i delta on the same
/// argument, box Dplus -> -m2 Dplus, box Dcomm -> -m2 Dcomm; a box on a
/// Dirac delta is an error (the rewrite pipeline never produces one).
DistExpr apply_klein_gordon(const DistExpr& e);

/// Contact-term reduction. Labels other than `contact` are treated as
/// pairwise non-coincident: a delta joining two of them kills its term. A
/// delta joining `contact` with an external label substitutes the contact
/// label away in the other factors; derivative-decorated deltas exchange
/// derivatives with the rest of the term first. When no contact label is
/// given, the greatest label appearing in a delta argument is used.
DistExpr delta_support_reduce(const DistExpr& e,
                              std::optional<Label> contact = std::nullopt);

/// Scaling degree of d^a delta on R^k: k + |a|.
int scaling_degree_delta(int deriv_order, int k);
/// A nonzero constant has scaling degree zero.
int scaling_degree_constant();

/// Index of the first Dplus factor whose argument runs against the label
/// order, or npos. Such factors are rewritten by the star commutator through
/// the frequency splitting i Dcomm(x) = Dplus(x) - Dplus(-x).
size_t find_anticanonical_deltaplus(const std::vector<KernelFactor>& ks);

/// Uniform relabeling of points (bijective on the labels that occur).
DistExpr relabel(const DistExpr& e, const std::map<Label, Label>& map);

/// Free index symbols (those appearing exactly once in a term), unioned.
std::set<Index> free_indices(const DistExpr& e);

// Term-level helpers shared with the operator algebra. Canonicalization
// treats contracted index pairs across kernel and field factors uniformly.
void canonicalize_term_inplace(std::vector<KernelFactor>& kernels,
                               std::vector<LocatedField>& fields,
                               ScalarCoeff& coeff);
int compare_kernel_lists(const std::vector<KernelFactor>& x,
                         const std::vector<KernelFactor>& y);
std::string kernel_list_str(const std::vector<KernelFactor>& ks);

}  // namespace wick

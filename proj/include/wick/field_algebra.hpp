#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wick/scalar_coeff.hpp"

namespace wick {

using Label = std::string;  // spacetime point label, e.g. "x1", "y"
using Index = std::string;  // abstract Lorentz index symbol, e.g. "mu"

/// Total order on point labels: alphabetic prefix first, then numeric suffix,
/// so x2 sorts before x10 and every x-label before y.
bool label_less(const Label& a, const Label& b);

enum class Species { Phi, PhiStar };

inline int charge_of(Species s) { return s == Species::Phi ? 1 : -1; }

/// One basic-field factor: derivative decorations applied to phi or phi*.
struct BasicFieldSymbol {
    Species species = Species::Phi;
    std::vector<Index> derivs;  // abstract upper indices, order irrelevant

    int compare(const BasicFieldSymbol& o) const;
    bool operator==(const BasicFieldSymbol& o) const { return compare(o) == 0; }
    bool operator<(const BasicFieldSymbol& o) const { return compare(o) < 0; }
    std::string str() const;
};

/// A basic-field factor living at a point.
struct LocatedField {
    Label point;
    BasicFieldSymbol sym;

    int compare(const LocatedField& o) const;
    bool operator==(const LocatedField& o) const { return compare(o) == 0; }
    bool operator<(const LocatedField& o) const { return compare(o) < 0; }
};

/// Product of basic-field factors with an exact coefficient. Local monomials
/// live at a single point; formal products of local factors at several labels
/// are carried by the same structure (factors keep their own labels).
struct FieldMonomial {
    ScalarCoeff coeff = ScalarCoeff::one();
    std::vector<LocatedField> factors;  // canonical: sorted

    FieldMonomial() = default;
    FieldMonomial(ScalarCoeff c, std::vector<LocatedField> f);
    static FieldMonomial constant(ScalarCoeff c) { return FieldMonomial{std::move(c), {}}; }
    static FieldMonomial at(const Label& point, ScalarCoeff c,
                            std::vector<BasicFieldSymbol> syms);

    bool is_constant() const { return factors.empty(); }
    /// The unique point of a local monomial; empty for constants, throws if
    /// the factors span several labels.
    std::optional<Label> single_point() const;

    /// Structural key ignoring the coefficient.
    int compare_factors(const FieldMonomial& o) const;
    std::string str() const;
};

struct FieldPolynomial {
    std::vector<FieldMonomial> terms;

    FieldPolynomial() = default;
    explicit FieldPolynomial(FieldMonomial m) : terms{std::move(m)} {}

    static FieldPolynomial zero() { return {}; }
    static FieldPolynomial constant(ScalarCoeff c);

    bool is_zero() const { return terms.empty(); }
    FieldPolynomial canonical() const;
    FieldPolynomial operator+(const FieldPolynomial& o) const;
    FieldPolynomial operator-(const FieldPolynomial& o) const;
    FieldPolynomial scaled(const ScalarCoeff& c) const;
    bool operator==(const FieldPolynomial& o) const;
    std::string str() const;
};

// ---- operations -----------------------------------------------------------

/// Pointwise product; same-label factors merge into one monomial, distinct
/// labels stay as a formal product of local factors.
FieldPolynomial multiply(const FieldPolynomial& a, const FieldPolynomial& b);

/// a - b: number of phi-type minus phi*-type factors.
int charge_number(const FieldMonomial& m);

/// Sum of (d-2)/2 + |a| over the factors.
Rational mass_dimension(const FieldMonomial& m, int d = 4);
/// For polynomials all terms must agree (homogeneous dimension), else throws.
Rational mass_dimension(const FieldPolynomial& p, int d = 4);

/// Membership in the first-derivative class: every factor carries at most one
/// derivative index.
bool in_first_derivative_class(const FieldMonomial& m);
bool in_first_derivative_class(const FieldPolynomial& p);

/// Charge number operator; defined on the first-derivative class only.
FieldPolynomial theta(const FieldPolynomial& p);

/// One term of a theta_mu image: the operator index mu is tied to `tied`
/// through a Kronecker delta, i.e. the pair means delta_mu^tied * mono.
struct IndexedTerm {
    Index tied;
    FieldMonomial mono;
};

/// theta_mu = phi d/d(d^mu phi) - phi* d/d(d^mu phi*); the result carries one
/// free lower index mu, represented through the tied-index terms.
std::vector<IndexedTerm> theta_mu(const FieldPolynomial& p);

/// Charge conjugation: phi -> eta phi*, phi* -> conj(eta) phi. Exact for
/// Gaussian-rational unit phases; defaults to eta = 1.
FieldPolynomial charge_conjugate(const FieldPolynomial& p,
                                 const ScalarCoeff& eta = ScalarCoeff::one());

/// Eigenvalue of a charge-conjugation eigenvector (+1/-1), nullopt otherwise.
std::optional<int> charge_conjugation_eigenvalue(
    const FieldPolynomial& p, const ScalarCoeff& eta = ScalarCoeff::one());

/// One way of splitting a monomial into a contracted part (entering a VEV)
/// and a spectator part, with the multiplicity of the split.
struct Submonomial {
    FieldMonomial contracted;  // keeps the coefficient of the input
    FieldMonomial spectator;   // coefficient one
    long factor = 1;           // product of binomials over factor types
};

/// All splits of the factor multiset of a local monomial.
std::vector<Submonomial> submonomials(const FieldMonomial& m);

// ---- named local polynomials ----------------------------------------------

FieldPolynomial basic_field(Species s, const Label& point,
                            std::vector<Index> derivs = {});
/// phi^m (phi*)^n at a point.
FieldPolynomial phi_power(int m, int n, const Label& point);
/// j^mu = i (phi d^mu phi* - phi* d^mu phi).
FieldPolynomial noether_current(const Index& mu, const Label& point);
/// L = (phi* phi)^2.
FieldPolynomial quartic_interaction(const Label& point);
/// Q = i phi.
FieldPolynomial charge_generator(const Label& point);

/// The span of the current, the quartic interaction and their submonomials:
/// phi^m (phi*)^n for 0 <= m,n <= 2 plus d phi, d phi* and j. Index names for
/// the three indexed entries are derived from `index_hint`.
std::vector<FieldPolynomial> submonomial_basis(const Label& point,
                                               const Index& index_hint = "mu");

}  // namespace wick

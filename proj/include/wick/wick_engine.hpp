#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wick/field_algebra.hpp"
#include "wick/kernel_calculus.hpp"

namespace wick {

/// One term of an element of the field algebra: exact coefficient, a product
/// of symbolic kernels and a normal-ordered product of basic-field factors.
/// Every propagator kernel enters carrying one power of hbar.
struct OpTerm {
    ScalarCoeff c;
    std::vector<KernelFactor> kernels;
    std::vector<LocatedField> fields;
};

struct OperatorExpr {
    std::vector<OpTerm> terms;

    static OperatorExpr zero() { return {}; }
    static OperatorExpr unit() { return from_coeff(ScalarCoeff::one()); }
    static OperatorExpr from_coeff(ScalarCoeff c);
    static OperatorExpr from(const FieldPolynomial& p);
    static OperatorExpr from(const FieldMonomial& m);
    static OperatorExpr from_dist(const DistExpr& e);

    bool is_zero() const;
    OperatorExpr operator+(const OperatorExpr& o) const;
    OperatorExpr operator-(const OperatorExpr& o) const;
    OperatorExpr scaled(const ScalarCoeff& c) const;
    bool operator==(const OperatorExpr& o) const;
    std::string str() const;
};

OperatorExpr canonicalize(const OperatorExpr& e);

/// Star product: sum over all cross contractions pairing a phi-type leg of
/// the left factor with a phi*-type leg of the right one (either species
/// split), each pair contributing hbar * Dplus(left point - right point)
/// with the legs' derivative decorations moved onto the kernel.
OperatorExpr star_product(const OperatorExpr& f, const OperatorExpr& g);

/// Same combinatorics with the Feynman propagator.
OperatorExpr feynman_star_product(const OperatorExpr& f, const OperatorExpr& g);

/// The hbar^0 part of either star product.
OperatorExpr pointwise_product(const OperatorExpr& f, const OperatorExpr& g);

/// F*G - G*F with opposite-orientation Dplus pairs resolved through
/// i Dcomm(x) = Dplus(x) - Dplus(-x).
OperatorExpr star_commutator(const OperatorExpr& f, const OperatorExpr& g);

/// Single cross contraction weighted by the commutator function; the hbar^1
/// coefficient of the star commutator equals i times this bracket.
OperatorExpr poisson_bracket(const OperatorExpr& f, const OperatorExpr& g);

/// Left-associated Feynman star product of local polynomials at pairwise
/// distinct labels; throws on a repeated label.
OperatorExpr unrenormalized_tproduct(const std::vector<FieldPolynomial>& args);

/// Vacuum expectation value: the field-free part.
DistExpr vev(const OperatorExpr& e);

/// Extracts the terms of fixed hbar power (coefficient grading preserved).
OperatorExpr hbar_part(const OperatorExpr& e, int power);

/// Charge number operator on operator terms; first-derivative class only.
OperatorExpr theta(const OperatorExpr& e);
OperatorExpr charge_conjugate(const OperatorExpr& e,
                              const ScalarCoeff& eta = ScalarCoeff::one());

// ---- contraction enumeration oracle ----------------------------------------

struct DiagramEdge {
    Label a, b;  // position labels, a before b
    std::vector<std::pair<Label, Index>> derivs;

    bool operator==(const DiagramEdge& o) const;
    bool operator<(const DiagramEdge& o) const;
};

/// One full-contraction diagram: the edge multiset between point labels,
/// the number of leg-level pairings realizing it, and that count divided by
/// the permutations of identical parallel edges (the coefficient diagrams are
/// displayed with).
struct ContractionDiagram {
    std::vector<DiagramEdge> edges;  // sorted
    long long multiplicity = 0;      // leg-level pairings for this diagram
    long long grouped_multiplicity = 0;
    ScalarCoeff coefficient;  // monomial coefficients times multiplicity and hbar^edges
    /// One representative pairing: (phi leg, phi* leg), legs as
    /// (argument position, point, derivatives). Cross pairings only.
    std::vector<std::pair<LocatedField, LocatedField>> representative_pairing;
    std::vector<std::pair<size_t, size_t>> representative_positions;
};

/// Enumerates every perfect cross-matching of phi legs onto phi* legs of the
/// argument monomials (no pairing within one argument), grouped by diagram.
std::vector<ContractionDiagram> enumerate_full_contractions(
    const std::vector<FieldMonomial>& args);

/// Brute-force VEV of the unrenormalized T-product, summed from the diagram
/// enumeration; independent of the star-product path. Distributes over
/// polynomial arguments multilinearly.
DistExpr contraction_vev(const std::vector<FieldPolynomial>& args);
DistExpr contraction_vev_monomials(const std::vector<FieldMonomial>& args);

using TProductOracle =
    std::function<DistExpr(const std::vector<FieldMonomial>&)>;

/// Causal Wick expansion: sum over submonomial splits of t(contracted parts)
/// times the spectator product with the splits' combinatorial factors.
OperatorExpr causal_wick_expand(const std::vector<FieldMonomial>& args,
                                const TProductOracle& t_oracle);

}  // namespace wick

#pragma once

#include <array>
#include <string>
#include <vector>

#include "wick/ward.hpp"

namespace wick {

/// Power-counting weight omega = sum of mass dimensions + 4 - 4n, in four
/// spacetime dimensions; arguments must be homogeneous.
Rational omega(const std::vector<FieldPolynomial>& ps);

enum class AnomalyClass {
    ZeroByPowerCounting,
    ZeroByFurry,
    ZeroByChargeNumber,
    CaseI,
    CaseII,
    CaseIII,
};

std::string anomaly_class_name(AnomalyClass c);

struct AnomalyVerdict {
    std::vector<std::string> args;
    Rational omega_value;
    AnomalyClass classification = AnomalyClass::ZeroByPowerCounting;
    int current_count = 0;
    std::string notes;
};

/// Applies, in order: charge-number exclusion, the Furry parity test on
/// every VEV entering the Ward identity for these arguments, power counting
/// omega <= 0, and finally the case bucketing by (number of currents, omega).
AnomalyVerdict classify(const std::vector<FieldPolynomial>& ps);

/// Description of the renormalization freedom for the three open cases.
std::string admissible_u(const AnomalyVerdict& v);

// ---- constant Lorentz-invariant tensors ------------------------------------

struct TensorStructure {
    int rank = 0;
    std::vector<std::pair<int, int>> metric_pairs;      // index positions
    std::vector<std::array<int, 4>> epsilon_blocks;

    std::string str() const;
    /// Exact component at an index assignment, metric diag(+,-,-,-),
    /// eps^{0123} = 1.
    Rational component(const std::vector<int>& assignment) const;
};

/// Spanning structures of the given rank built from metric pairs and at most
/// one Levi-Civita block, reduced modulo the symmetry generated by the given
/// permutations of the index slots: structures whose symmetrization vanishes
/// are rejected, and a maximal independent subset (by exact component
/// evaluation in d = 4) of the symmetrized remainder is returned.
std::vector<TensorStructure> invariant_tensor_basis(
    int rank, const std::vector<std::vector<int>>& symmetry_generators,
    bool allow_epsilon);

// ---- case I: derivative structures on the delta ----------------------------

struct Case1Report {
    int m = 0;  // symmetrized first-group labels, >= 2
    int basis1_rank = 0;
    int basis2_rank = 0;
    int joint_rank = 0;
    bool bases_equivalent = false;     // equal spans with exact mutual expansions
    bool round_trip_zero = false;
    bool group1_swap_invariant = false;
    bool group2_swap_invariant = false;
    bool group3_swap_invariant = true;  // expected false
    std::string constraint;
    bool constraint_verified = false;
    bool annihilation_verified = false;       // d_mu^y (d^mu d^nu - g box)_y = 0
    bool c4_matches_c2_divergence = false;
    std::vector<std::string> basis1_names;
    std::vector<std::string> basis2_names;
};

/// Mechanizes the two-derivative analysis behind case I: the nine-dimensional
/// structure space, the basis change, the swap symmetries, the coefficient
/// constraint and the divergence identities.
Case1Report case1_reduce(int m = 3);

// ---- the case table ---------------------------------------------------------

struct Table1Row {
    int row = 0;
    std::string pattern;
    std::vector<std::string> args;
    Rational omega_value;
    AnomalyClass classification = AnomalyClass::ZeroByPowerCounting;
    bool omega_nonpositive = false;
};

/// The eight explicit argument choices at order n (n >= 4), classified.
std::vector<Table1Row> table1(int n);

}  // namespace wick

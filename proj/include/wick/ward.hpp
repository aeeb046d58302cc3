#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wick/wick_engine.hpp"

namespace wick {

enum class Verdict { Verified, AnomalyCandidate };
enum class ExclusionCheck { ForcedZero, NotApplicable };

std::string verdict_name(Verdict v);

/// One contact term of the Ward identity's right-hand side, kept in the
/// structural form coefficient * [d^nu_y] delta(y - at) * t(args).
struct ContactTerm {
    Label at;
    std::string origin;  // "theta" or "theta_mu"
    ScalarCoeff coefficient;
    std::optional<Index> deriv_index;  // theta_mu terms: index on d_y delta
    std::vector<std::string> t_args;
    DistExpr t_value;
    std::vector<ContractionDiagram> diagrams;
};

struct MwiReport {
    std::vector<std::string> args;
    std::vector<Label> labels;
    Label contact;
    DistExpr lhs, rhs, residual;
    Verdict verdict = Verdict::AnomalyCandidate;
    bool residual_contact_supported = true;  // every residual term carries a
                                             // delta against the contact label
    bool index_sets_match = true;
    std::vector<ContactTerm> contacts;
    std::vector<ContractionDiagram> lhs_diagrams;  // of t(P..., j(y))
    std::vector<std::pair<std::string, std::string>> trace;
};

/// Rewrite pipeline: Klein-Gordon contact extraction, delta support
/// reduction against the contact label, canonicalization, to fixpoint.
DistExpr mwi_reduce(const DistExpr& e, const Label& contact);

/// d_mu^y of the VEV of T(P_1(x_1), ..., P_n(x_n), j^mu(y)), fully reduced.
/// Arguments must lie in the first-derivative class, at distinct labels, all
/// distinct from the contact label.
DistExpr build_mwi_lhs(const std::vector<FieldPolynomial>& ps, const Label& y);

/// hbar sum_l delta(y-x_l) t(..., theta P_l, ...) minus
/// hbar d_mu^y sum_l delta(y-x_l) t(..., theta^mu P_l, ...), canonical form.
DistExpr build_mwi_rhs(const std::vector<FieldPolynomial>& ps, const Label& y);

/// Both sides plus their difference; Verified iff the residual vanishes.
MwiReport check_mwi(const std::vector<FieldPolynomial>& ps, const Label& y = "y",
                    bool with_diagrams = true, bool with_trace = false);

/// Compares two independently produced sides; used to surface deliberately
/// perturbed identities as anomaly candidates.
MwiReport compare_mwi_sides(DistExpr lhs, DistExpr rhs, const Label& contact);

/// Charge-conjugation parity test: every argument must be a beta_C
/// eigenvector; the VEV is forced to vanish when the count of odd arguments
/// is odd.
ExclusionCheck furry_check(const std::vector<FieldPolynomial>& args,
                           const ScalarCoeff& eta = ScalarCoeff::one());

/// Forced zero when no combination of the arguments' charge numbers balances.
ExclusionCheck charge_conservation_check(const std::vector<FieldPolynomial>& args);

/// Sum of charge numbers; throws when an argument mixes charges.
int total_charge(const std::vector<FieldPolynomial>& args);

/// An index symbol not used by any derivative decoration of the arguments.
Index fresh_index(const std::vector<FieldPolynomial>& ps, const std::string& base);

/// A point label not used by any argument.
Label fresh_label(const std::vector<FieldPolynomial>& ps, const std::string& base);

}  // namespace wick

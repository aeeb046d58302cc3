#include <doctest.h>

#include "support.hpp"
#include "wick/anomaly.hpp"

using namespace wick;

namespace {

std::vector<FieldPolynomial> row_args(int l_count, const std::vector<int>& extras) {
    // extras: 0 = current, 21 = phi^2 phis, 12 = phi phis^2, 11 = phi phis
    std::vector<FieldPolynomial> args;
    for (int i = 0; i < l_count; ++i)
        args.push_back(quartic_interaction("x" + std::to_string(args.size() + 1)));
    int j = 0;
    for (int e : extras) {
        Label pt = "x" + std::to_string(args.size() + 1);
        if (e == 0) args.push_back(noether_current("nu" + std::to_string(++j), pt));
        else args.push_back(phi_power(e / 10, e % 10, pt));
    }
    return args;
}

}  // namespace

TEST_CASE("omega power counting") {
    CHECK(omega(row_args(3, {0})) == Rational(3));
    CHECK(omega(row_args(1, {0, 0, 0})) == Rational(1));
    CHECK(omega(row_args(1, {0, 0, 0, 0})) == Rational(0));
    CHECK(omega(row_args(2, {11, 0})) == Rational(1));
    // permutation invariance and the L -> phi*phi drop of two units
    CHECK(omega({noether_current("nu", "x1"), quartic_interaction("x2")}) ==
          Rational(3));
    CHECK(omega({quartic_interaction("x1"), noether_current("nu", "x2")}) ==
          Rational(3));
    CHECK(omega({phi_power(1, 1, "x1"), noether_current("nu", "x2")}) == Rational(1));
    CHECK_THROWS_AS(omega({}), std::invalid_argument);
    CHECK_THROWS_AS(
        omega({basic_field(Species::Phi, "x1") + quartic_interaction("x1")}),
        std::domain_error);
}

TEST_CASE("classification follows the exclusion order") {
    CHECK(classify(row_args(4, {0, 0})).classification == AnomalyClass::ZeroByFurry);
    CHECK(classify(row_args(4, {21, 0})).classification ==
          AnomalyClass::ZeroByChargeNumber);
    CHECK(classify(row_args(5, {0})).classification == AnomalyClass::CaseI);
    CHECK(classify(row_args(3, {0, 0, 0})).classification == AnomalyClass::CaseII);
    CHECK(classify(row_args(4, {11, 0})).classification == AnomalyClass::CaseIII);
    // power counting only fires when no other exclusion does
    auto v = classify({phi_power(2, 0, "x1"), phi_power(0, 2, "x2")});
    CHECK(v.classification == AnomalyClass::ZeroByPowerCounting);
    CHECK(v.omega_value == Rational(0));
    // a single current is case I at any order
    CHECK(classify({noether_current("nu", "x1")}).classification ==
          AnomalyClass::CaseI);
    // interactions alone are excluded by the parity argument
    CHECK(classify({quartic_interaction("x1"), quartic_interaction("x2")})
              .classification == AnomalyClass::ZeroByFurry);
}

TEST_CASE("the case table") {
    auto rows = table1(6);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].omega_value == Rational(3));
    CHECK(rows[2].omega_value == Rational(1));
    CHECK(rows[3].omega_value == Rational(0));
    CHECK(rows[6].omega_value == Rational(1));
    CHECK(rows[7].omega_value == Rational(0));
    CHECK(rows[0].classification == AnomalyClass::CaseI);
    CHECK(rows[1].classification == AnomalyClass::ZeroByFurry);
    CHECK(rows[2].classification == AnomalyClass::CaseII);
    CHECK(rows[4].classification == AnomalyClass::ZeroByChargeNumber);
    CHECK(rows[5].classification == AnomalyClass::ZeroByChargeNumber);
    CHECK(rows[6].classification == AnomalyClass::CaseIII);
    // omega is independent of the order n
    for (int n : {5, 7, 9}) {
        auto r = table1(n);
        for (size_t i = 0; i < r.size(); ++i) {
            CHECK(r[i].omega_value == rows[i].omega_value);
            CHECK(r[i].classification == rows[i].classification);
        }
    }
    CHECK_THROWS_AS(table1(3), std::invalid_argument);
}

TEST_CASE("invariant tensor bases in four dimensions") {
    auto r2 = invariant_tensor_basis(2, {}, true);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].metric_pairs.size() == 1);
    CHECK(r2[0].epsilon_blocks.empty());

    CHECK(invariant_tensor_basis(4, {}, false).size() == 3);
    CHECK(invariant_tensor_basis(4, {}, true).size() == 4);
    CHECK(invariant_tensor_basis(3, {}, false).empty());
    CHECK(invariant_tensor_basis(3, {}, true).empty());

    // total symmetry: one class, the Levi-Civita candidates are rejected
    auto sym = invariant_tensor_basis(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, true);
    REQUIRE(sym.size() == 1);
    CHECK(sym[0].epsilon_blocks.empty());

    // pair symmetry (mu nu) keeps the epsilon out, g-structures reduce to 2
    auto pair_sym = invariant_tensor_basis(4, {{1, 0, 2, 3}}, true);
    for (const auto& t : pair_sym) CHECK(t.epsilon_blocks.empty());
    CHECK(pair_sym.size() == 2);
}

TEST_CASE("tensor components are exact") {
    TensorStructure g2{2, {{0, 1}}, {}};
    CHECK(g2.component({0, 0}) == Rational(1));
    CHECK(g2.component({1, 1}) == Rational(-1));
    CHECK(g2.component({0, 1}) == Rational(0));
    TensorStructure eps{4, {}, {{0, 1, 2, 3}}};
    CHECK(eps.component({0, 1, 2, 3}) == Rational(1));
    CHECK(eps.component({1, 0, 2, 3}) == Rational(-1));
    CHECK(eps.component({0, 0, 2, 3}) == Rational(0));
}

TEST_CASE("case I structure space") {
    for (int m : {2, 3, 4}) {
        auto rep = case1_reduce(m);
        CHECK(rep.basis1_rank == 9);
        CHECK(rep.basis2_rank == 9);
        CHECK(rep.joint_rank == 9);
        CHECK(rep.bases_equivalent);
        CHECK(rep.round_trip_zero);
        CHECK(rep.group1_swap_invariant);
        CHECK(rep.group2_swap_invariant);
        CHECK(!rep.group3_swap_invariant);
        CHECK(rep.constraint == "C1 = C2 - C3 + C4");
        CHECK(rep.constraint_verified);
        CHECK(rep.annihilation_verified);
        CHECK(rep.c4_matches_c2_divergence);
    }
    CHECK_THROWS_AS(case1_reduce(1), std::invalid_argument);
}

TEST_CASE("admissible renormalization descriptions") {
    auto ii = classify(row_args(3, {0, 0, 0}));
    auto s2 = admissible_u(ii);
    CHECK(s2.find("g(mu,nu1)g(nu2,nu3)") != std::string::npos);
    CHECK(s2.find("dimension 1") != std::string::npos);

    auto iii = classify(row_args(4, {11, 0}));
    CHECK(admissible_u(iii).find("g(mu,nu)") != std::string::npos);

    auto i = classify(row_args(5, {0}));
    auto s1 = admissible_u(i);
    CHECK(s1.find("C1 = C2 - C3 + C4") != std::string::npos);
    CHECK(s1.find("|a| <= 2") != std::string::npos);

    CHECK_THROWS_AS(admissible_u(classify(row_args(4, {0, 0}))),
                    std::invalid_argument);
}

#include <doctest.h>

#include <fstream>

#include "schema_check.hpp"
#include "support.hpp"
#include "wick/diagram_export.hpp"
#include "wick/ward.hpp"

using namespace wick;
using wick::testing::Rng;

namespace {

const ContactTerm* contact_at(const MwiReport& rep, const Label& at,
                              const std::string& origin) {
    for (const auto& c : rep.contacts)
        if (c.at == at && c.origin == origin) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("ward identity for phi^2 and phis^2") {
    auto rep = check_mwi({phi_power(2, 0, "x1"), phi_power(0, 2, "x2")});
    CHECK(rep.verdict == Verdict::Verified);
    CHECK(rep.residual.is_zero());
    CHECK(rep.lhs == rep.rhs);
    REQUIRE(rep.contacts.size() == 2);
    auto* c1 = contact_at(rep, "x1", "theta");
    auto* c2 = contact_at(rep, "x2", "theta");
    REQUIRE(c1);
    REQUIRE(c2);
    CHECK(c1->coefficient == ScalarCoeff::integer(2) * ScalarCoeff::hbar());
    CHECK(c2->coefficient == ScalarCoeff::integer(-2) * ScalarCoeff::hbar());
    KernelFactor df = make_kernel(KernelKind::DeltaFeynman, "x1", "x2");
    CHECK(c1->t_value ==
          DistExpr::single(ScalarCoeff::integer(2) * ScalarCoeff::hbar(2), {df, df}));
}

TEST_CASE("ward identity for phi^2 phis and phi phis^2") {
    auto rep = check_mwi({phi_power(2, 1, "x1"), phi_power(1, 2, "x2")});
    CHECK(rep.verdict == Verdict::Verified);
    auto* c1 = contact_at(rep, "x1", "theta");
    auto* c2 = contact_at(rep, "x2", "theta");
    REQUIRE(c1);
    REQUIRE(c2);
    CHECK(c1->coefficient == ScalarCoeff::hbar());
    CHECK(c2->coefficient == -ScalarCoeff::hbar());
}

TEST_CASE("ward identity with a current among the arguments") {
    auto rep = check_mwi({phi_power(1, 1, "x1"), noether_current("nu", "x2")});
    CHECK(rep.verdict == Verdict::Verified);
    CHECK(rep.index_sets_match);
    CHECK(free_indices(rep.lhs) == std::set<Index>{"nu"});
    // theta vanishes on both arguments; only the theta_mu contact remains
    REQUIRE(rep.contacts.size() == 1);
    const auto& c = rep.contacts[0];
    CHECK(c.origin == "theta_mu");
    CHECK(c.at == "x2");
    CHECK(c.deriv_index == Index("nu"));
    CHECK(c.coefficient ==
          ScalarCoeff::integer(2) * ScalarCoeff::i() * ScalarCoeff::hbar());
    KernelFactor df = make_kernel(KernelKind::DeltaFeynman, "x1", "x2");
    CHECK(c.t_value == DistExpr::single(ScalarCoeff::hbar(2), {df, df}));
}

TEST_CASE("ward identity at third order with the interaction") {
    auto rep = check_mwi({quartic_interaction("x1"), phi_power(2, 1, "x2"),
                          phi_power(1, 2, "x3")});
    CHECK(rep.verdict == Verdict::Verified);
    auto* c2 = contact_at(rep, "x2", "theta");
    auto* c3 = contact_at(rep, "x3", "theta");
    REQUIRE(c2);
    REQUIRE(c3);
    CHECK(c2->coefficient == ScalarCoeff::hbar());
    CHECK(c3->coefficient == -ScalarCoeff::hbar());
    REQUIRE(c2->diagrams.size() == 1);
    CHECK(c2->diagrams[0].multiplicity == 20);
    CHECK(c2->diagrams[0].grouped_multiplicity == 5);
    // no contact from the interaction itself
    CHECK(contact_at(rep, "x1", "theta") == nullptr);
}

TEST_CASE("small and degenerate ward identities") {
    CHECK(check_mwi({phi_power(1, 1, "x1")}).verdict == Verdict::Verified);
    CHECK(check_mwi({basic_field(Species::Phi, "x1")}).verdict == Verdict::Verified);
    CHECK(check_mwi({basic_field(Species::Phi, "x1", {"al"}),
                     basic_field(Species::PhiStar, "x2", {"be"})})
              .verdict == Verdict::Verified);
    CHECK(check_mwi({noether_current("nu", "x1")}).verdict == Verdict::Verified);
    CHECK(check_mwi({quartic_interaction("x1")}).verdict == Verdict::Verified);
}

TEST_CASE("ward verifier input validation") {
    CHECK_THROWS_AS(check_mwi({basic_field(Species::Phi, "x1", {"a", "b"})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_mwi({basic_field(Species::Phi, "y")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_mwi({basic_field(Species::Phi, "x1"),
                               basic_field(Species::PhiStar, "x1")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_mwi({}), std::invalid_argument);
}

TEST_CASE("identities hold on the submonomial span at order two") {
    testing::MemoOracle memo;
    for (int a = 0; a < testing::kBasisSize; ++a)
        for (int b = 0; b < testing::kBasisSize; ++b) {
            std::vector<FieldPolynomial> ps = {testing::basis_element(a, "x1", 1),
                                               testing::basis_element(b, "x2", 2)};
            auto rep = check_mwi(ps, "y", false, false);
            CHECK(rep.verdict == Verdict::Verified);
        }
}

TEST_CASE("identities hold on sampled order-three tuples from the span") {
    Rng rng(101);
    for (int k = 0; k < 60; ++k) {
        std::vector<FieldPolynomial> ps;
        for (int i = 0; i < 3; ++i)
            ps.push_back(testing::basis_element(
                static_cast<int>(rng.pick(testing::kBasisSize)), "x" + std::to_string(i + 1),
                i + 1));
        auto rep = check_mwi(ps, "y", false, false);
        CHECK(rep.verdict == Verdict::Verified);
    }
}

TEST_CASE("perturbed identities surface as local anomaly candidates") {
    std::vector<FieldPolynomial> ps = {phi_power(2, 0, "x1"), phi_power(0, 2, "x2")};
    auto lhs = build_mwi_lhs(ps, "y");
    auto rhs = build_mwi_rhs(ps, "y");
    auto rep = compare_mwi_sides(lhs, rhs.scaled(ScalarCoeff::integer(2)), "y");
    CHECK(rep.verdict == Verdict::AnomalyCandidate);
    CHECK(!rep.residual.is_zero());
    // locality: every residual term carries a contact delta against y
    for (const auto& t : rep.residual.terms) {
        bool has_contact = false;
        for (const auto& kf : t.kernels)
            if (kf.kind == KernelKind::DiracDelta && kf.depends_on("y"))
                has_contact = true;
        CHECK(has_contact);
    }
}

TEST_CASE("furry and charge exclusion checks") {
    CHECK(furry_check({noether_current("a", "x1"), quartic_interaction("x2"),
                       quartic_interaction("x3")}) == ExclusionCheck::ForcedZero);
    CHECK(furry_check({noether_current("a", "x1"), noether_current("b", "x2"),
                       quartic_interaction("x3")}) == ExclusionCheck::NotApplicable);
    CHECK(furry_check({noether_current("a", "x1"), noether_current("b", "x2"),
                       noether_current("c", "x3")}) == ExclusionCheck::ForcedZero);
    CHECK_THROWS_AS(furry_check({phi_power(2, 1, "x1")}), std::invalid_argument);

    CHECK(charge_conservation_check({quartic_interaction("x1"), phi_power(2, 1, "x2"),
                                     noether_current("nu", "x3")}) ==
          ExclusionCheck::ForcedZero);
    CHECK(charge_conservation_check({quartic_interaction("x1"),
                                     noether_current("nu", "x2")}) ==
          ExclusionCheck::NotApplicable);
    CHECK(charge_conservation_check({phi_power(2, 0, "x1"), phi_power(0, 1, "x2")}) ==
          ExclusionCheck::ForcedZero);

    // forced-zero verdicts agree with the engine
    CHECK(contraction_vev({noether_current("a", "x1"), quartic_interaction("x2"),
                           quartic_interaction("x3")})
              .is_zero());
    CHECK(contraction_vev({phi_power(2, 0, "x1"), phi_power(0, 1, "x2")}).is_zero());
}

TEST_CASE("ward reports are deterministic and schema-valid") {
    auto rep = check_mwi({phi_power(1, 1, "x1"), noether_current("nu", "x2")}, "y",
                         true, true);
    auto j1 = ward_report_to_json(rep);
    auto rep2 = check_mwi({phi_power(1, 1, "x1"), noether_current("nu", "x2")}, "y",
                          true, true);
    CHECK(j1.dump() == ward_report_to_json(rep2).dump());
    CHECK(ward_report_to_text(rep) == ward_report_to_text(rep2));

    std::ifstream schema_file("schema/ward_report.schema.json");
    if (!schema_file) schema_file.open("../schema/ward_report.schema.json");
    REQUIRE(schema_file);
    nlohmann::json schema = nlohmann::json::parse(schema_file);
    std::string err;
    nlohmann::json plain = nlohmann::json::parse(j1.dump());
    CHECK_MESSAGE(testing::validate_against_schema(plain, schema, &err), err);
}

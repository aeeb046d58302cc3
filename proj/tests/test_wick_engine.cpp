#include <doctest.h>

#include "support.hpp"
#include "wick/diagram_export.hpp"
#include "wick/wick_engine.hpp"

using namespace wick;
using wick::testing::Rng;

namespace {

OperatorExpr op(const FieldPolynomial& p) { return OperatorExpr::from(p); }

std::vector<FieldPolynomial> random_tuple(Rng& rng, int n, int max_fields,
                                          int& index_counter, bool coeffs = true) {
    std::vector<FieldPolynomial> ps;
    for (int i = 0; i < n; ++i)
        ps.push_back(FieldPolynomial{testing::random_p1_monomial(
            rng, "x" + std::to_string(i + 1), max_fields, index_counter, true,
            coeffs)});
    return ps;
}

}  // namespace

TEST_CASE("star product basics") {
    auto phi_x = op(basic_field(Species::Phi, "x"));
    auto phis_y = op(basic_field(Species::PhiStar, "y"));
    auto r = star_product(phi_x, phis_y);
    auto expected =
        pointwise_product(phi_x, phis_y) +
        OperatorExpr::from_dist(DistExpr::single(
            ScalarCoeff::hbar(), {make_kernel(KernelKind::DeltaPlus, "x", "y")}));
    CHECK(r == expected);

    CHECK(star_product(phi_x, op(basic_field(Species::Phi, "y"))) ==
          pointwise_product(phi_x, op(basic_field(Species::Phi, "y"))));
    CHECK(star_product(OperatorExpr::unit(), phis_y) == phis_y);
}

TEST_CASE("basic commutators from the star engine") {
    auto phi_x = op(basic_field(Species::Phi, "x"));
    auto phis_y = op(basic_field(Species::PhiStar, "y"));
    auto ihD = OperatorExpr::from_dist(DistExpr::single(
        ScalarCoeff::i() * ScalarCoeff::hbar(),
        {make_kernel(KernelKind::DeltaCommutator, "x", "y")}));
    CHECK(star_commutator(phi_x, phis_y) == ihD);
    // [phi*(x), phi(y)] = i hbar Dcomm(x-y) as well
    auto phis_x = op(basic_field(Species::PhiStar, "x"));
    auto phi_y = op(basic_field(Species::Phi, "y"));
    CHECK(star_commutator(phis_x, phi_y) == ihD);
    CHECK(star_commutator(phi_x, phi_y).is_zero());
    CHECK(star_commutator(phis_x, phis_y).is_zero());
    CHECK(star_commutator(OperatorExpr::unit(), phis_y).is_zero());
}

TEST_CASE("poisson bracket and the jacobi identity") {
    auto phi_x = op(basic_field(Species::Phi, "x"));
    auto phis_y = op(basic_field(Species::PhiStar, "y"));
    CHECK(poisson_bracket(phi_x, phis_y) ==
          OperatorExpr::from_dist(DistExpr::single(
              ScalarCoeff::one(), {make_kernel(KernelKind::DeltaCommutator, "x", "y")})));
    CHECK(poisson_bracket(phi_x, op(basic_field(Species::Phi, "y"))).is_zero());

    auto A = phi_x, B = phis_y, C = op(phi_power(1, 1, "z"));
    auto jac = poisson_bracket(A, poisson_bracket(B, C)) +
               poisson_bracket(B, poisson_bracket(C, A)) +
               poisson_bracket(C, poisson_bracket(A, B));
    CHECK(jac.is_zero());
}

TEST_CASE("unrenormalized time-ordered products") {
    auto t = unrenormalized_tproduct(
        {basic_field(Species::PhiStar, "x1"), basic_field(Species::Phi, "x2")});
    auto expected =
        pointwise_product(op(basic_field(Species::PhiStar, "x1")),
                          op(basic_field(Species::Phi, "x2"))) +
        OperatorExpr::from_dist(DistExpr::single(
            ScalarCoeff::hbar(), {make_kernel(KernelKind::DeltaFeynman, "x1", "x2")}));
    CHECK(t == expected);

    auto single = unrenormalized_tproduct({quartic_interaction("x1")});
    CHECK(single == op(quartic_interaction("x1")));

    CHECK(unrenormalized_tproduct(
              {basic_field(Species::Phi, "x1"), basic_field(Species::Phi, "x2")}) ==
          pointwise_product(op(basic_field(Species::Phi, "x1")),
                            op(basic_field(Species::Phi, "x2"))));

    CHECK_THROWS_AS(unrenormalized_tproduct({basic_field(Species::Phi, "x1"),
                                             basic_field(Species::PhiStar, "x1")}),
                    std::invalid_argument);
}

TEST_CASE("vacuum expectation values") {
    auto t = unrenormalized_tproduct(
        {basic_field(Species::PhiStar, "x1"), basic_field(Species::Phi, "x2")});
    CHECK(vev(t) == DistExpr::single(ScalarCoeff::hbar(),
                                     {make_kernel(KernelKind::DeltaFeynman, "x1", "x2")}));
    CHECK(vev(op(basic_field(Species::Phi, "x"))).is_zero());

    auto t2 = unrenormalized_tproduct({phi_power(1, 1, "x1"), phi_power(1, 1, "x2")});
    KernelFactor df = make_kernel(KernelKind::DeltaFeynman, "x1", "x2");
    CHECK(vev(t2) == DistExpr::single(ScalarCoeff::hbar(2), {df, df}));
}

TEST_CASE("full contraction enumeration") {
    auto d1 = enumerate_full_contractions(
        {phi_power(2, 0, "x1").terms[0], phi_power(0, 2, "x2").terms[0]});
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].multiplicity == 2);
    CHECK(d1[0].coefficient ==
          ScalarCoeff::integer(2) * ScalarCoeff::hbar(2));

    // no perfect cross-matching between j and L
    for (const auto& m : noether_current("mu", "x").terms)
        CHECK(enumerate_full_contractions({m, quartic_interaction("y").terms[0]})
                  .empty());
    CHECK(contraction_vev({noether_current("mu", "x"), quartic_interaction("y")})
              .is_zero());

    auto d3 = enumerate_full_contractions({basic_field(Species::Phi, "x1").terms[0],
                                           basic_field(Species::PhiStar, "x2").terms[0],
                                           phi_power(1, 1, "x3").terms[0]});
    REQUIRE(d3.size() == 1);
    CHECK(d3[0].multiplicity == 1);
    CHECK(contraction_vev_monomials({basic_field(Species::Phi, "x1").terms[0],
                                     basic_field(Species::PhiStar, "x2").terms[0],
                                     phi_power(1, 1, "x3").terms[0]}) ==
          DistExpr::single(ScalarCoeff::hbar(2),
                           {make_kernel(KernelKind::DeltaFeynman, "x1", "x3"),
                            make_kernel(KernelKind::DeltaFeynman, "x2", "x3")}));
}

TEST_CASE("contraction oracle agrees with the star-product path") {
    Rng rng(31);
    int ic = 0;
    for (int k = 0; k < 60; ++k) {
        auto ps = random_tuple(rng, 1 + static_cast<int>(rng.pick(3)), 3, ic);
        CHECK(vev(unrenormalized_tproduct(ps)) == contraction_vev(ps));
    }
}

TEST_CASE("causal wick expansion matches the product on the golden pair") {
    std::vector<FieldMonomial> args = {phi_power(2, 0, "x1").terms[0],
                                       phi_power(0, 2, "x2").terms[0]};
    auto cw = causal_wick_expand(args, testing::vev_tproduct_oracle);
    auto t = unrenormalized_tproduct({phi_power(2, 0, "x1"), phi_power(0, 2, "x2")});
    CHECK(cw == t);

    // explicit three-term shape
    KernelFactor df = make_kernel(KernelKind::DeltaFeynman, "x1", "x2");
    OperatorExpr expected =
        OperatorExpr::from_dist(DistExpr::single(
            ScalarCoeff::integer(2) * ScalarCoeff::hbar(2), {df, df})) +
        pointwise_product(op(phi_power(2, 0, "x1")), op(phi_power(0, 2, "x2")));
    OpTerm mid;
    mid.c = ScalarCoeff::integer(4) * ScalarCoeff::hbar();
    mid.kernels = {df};
    mid.fields = {LocatedField{"x1", BasicFieldSymbol{Species::Phi, {}}},
                  LocatedField{"x2", BasicFieldSymbol{Species::PhiStar, {}}}};
    expected = expected + OperatorExpr{{mid}};
    CHECK(cw == expected);

    // single argument: the expansion is the initial condition
    auto single = causal_wick_expand({quartic_interaction("x1").terms[0]},
                                     testing::vev_tproduct_oracle);
    CHECK(single == op(quartic_interaction("x1")));

    // constants are linear
    auto c = FieldMonomial::constant(ScalarCoeff::integer(3));
    auto with_c = causal_wick_expand({c, phi_power(1, 1, "x1").terms[0]},
                                     testing::vev_tproduct_oracle);
    CHECK(with_c == op(phi_power(1, 1, "x1")).scaled(ScalarCoeff::integer(3)));
}

TEST_CASE("deformation quantization conditions on random inputs") {
    Rng rng(41);
    int ic = 0;
    for (int k = 0; k < 30; ++k) {
        auto ps = random_tuple(rng, 2, 4, ic);
        auto F = op(ps[0]), G = op(ps[1]);
        CHECK(hbar_part(star_product(F, G), 0) == pointwise_product(F, G));
        auto comm = star_commutator(F, G);
        CHECK(hbar_part(comm, 1) ==
              poisson_bracket(F, G).scaled(ScalarCoeff::i() * ScalarCoeff::hbar()));
    }
    for (int k = 0; k < 12; ++k) {
        auto ps = random_tuple(rng, 3, 3, ic);
        auto F = op(ps[0]), G = op(ps[1]), H = op(ps[2]);
        CHECK(star_product(star_product(F, G), H) ==
              star_product(F, star_product(G, H)));
        CHECK(feynman_star_product(feynman_star_product(F, G), H) ==
              feynman_star_product(F, feynman_star_product(G, H)));
    }
}

TEST_CASE("structural homomorphisms over the star product") {
    Rng rng(43);
    int ic = 0;
    for (int k = 0; k < 30; ++k) {
        auto ps = random_tuple(rng, 2, 3, ic);
        auto F = op(ps[0]), G = op(ps[1]);
        CHECK(charge_conjugate(star_product(F, G)) ==
              star_product(charge_conjugate(F), charge_conjugate(G)));
        CHECK(theta(star_product(F, G)) ==
              star_product(theta(F), G) + star_product(F, theta(G)));
    }
}

TEST_CASE("charge balance forces vanishing vacuum expectation values") {
    Rng rng(47);
    int ic = 0;
    int found = 0;
    while (found < 40) {
        auto ps = random_tuple(rng, 1 + static_cast<int>(rng.pick(3)), 4, ic);
        int q = 0;
        for (const auto& p : ps) q += charge_number(p.terms[0]);
        if (q == 0) continue;
        ++found;
        CHECK(vev(unrenormalized_tproduct(ps)).is_zero());
        CHECK(enumerate_full_contractions({ps[0].terms[0]}).empty());
    }
}

TEST_CASE("time-ordered products are totally symmetric") {
    Rng rng(53);
    int ic = 0;
    for (int k = 0; k < 12; ++k) {
        auto ps = random_tuple(rng, 3, 3, ic);
        auto base = unrenormalized_tproduct(ps);
        std::vector<FieldPolynomial> perm = {ps[2], ps[0], ps[1]};
        CHECK(unrenormalized_tproduct(perm) == base);
    }
    // with a current among the arguments
    std::vector<FieldPolynomial> withj = {quartic_interaction("x1"),
                                          noether_current("nu", "x2")};
    std::vector<FieldPolynomial> swapped = {noether_current("nu", "x2"),
                                            quartic_interaction("x1")};
    CHECK(unrenormalized_tproduct(withj) == unrenormalized_tproduct(swapped));
}

TEST_CASE("hbar grading counts the propagators") {
    Rng rng(59);
    int ic = 0;
    for (int k = 0; k < 20; ++k) {
        auto ps = random_tuple(rng, 2, 4, ic, /*coeffs=*/false);
        auto r = star_product(op(ps[0]), op(ps[1]));
        for (const auto& t : r.terms) {
            int props = 0;
            for (const auto& kf : t.kernels)
                if (kf.kind != KernelKind::DiracDelta) ++props;
            CHECK(t.c.hbar_power == props);
        }
    }
}

TEST_CASE("diagram export carries kinds, derivatives and multiplicities") {
    auto ds = enumerate_full_contractions({quartic_interaction("x1").terms[0],
                                           phi_power(2, 1, "x2").terms[0],
                                           phi_power(1, 2, "x3").terms[0]});
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].multiplicity == 20);
    CHECK(ds[0].grouped_multiplicity == 5);
    auto dot = diagram_to_dot(ds[0], "g0");
    CHECK(dot.find("graph g0") != std::string::npos);
    CHECK(dot.find("kind=\"DF\"") != std::string::npos);
    CHECK(dot.find("multiplicity=2") != std::string::npos);
    auto j = diagram_to_json(ds[0]);
    CHECK(j["pairings"] == 20);
    CHECK(j["multiplicity"] == 5);
    CHECK(j["edges"].size() == 3);

    // representative pairings are cross pairings realizing the diagram
    for (const auto& d : ds) {
        CHECK(static_cast<long long>(d.representative_pairing.size()) ==
              static_cast<long long>(d.edges.size()));
        for (const auto& [pl, sl] : d.representative_pairing) {
            CHECK(pl.sym.species == Species::Phi);
            CHECK(sl.sym.species == Species::PhiStar);
            CHECK(pl.point != sl.point);
        }
    }

    // derivative decorations show up on the edges
    auto dd = enumerate_full_contractions(
        {basic_field(Species::Phi, "x1", {"mu"}).terms[0],
         basic_field(Species::PhiStar, "x2").terms[0]});
    REQUIRE(dd.size() == 1);
    auto jd = diagram_to_json(dd[0]);
    CHECK(jd["edges"][0]["derivs"][0]["index"] == "mu");
}

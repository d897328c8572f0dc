#include <doctest.h>

#include <random>

#include "rhmap/dsl.hpp"
#include "rhmap/mapspace.hpp"
#include "support.hpp"

using namespace rhmap;

namespace {

MappingSpaceModel wedge_model() {
    return mapping_space_model(fixtures::wedge_s2s2s5(), fixtures::two_stage_y());
}

MappingSpaceModel hy_model() {
    return mapping_space_model(fixtures::h_of_y(), fixtures::two_stage_y());
}

// {1, p3, q5, r8} with p*q = r: the residual becomes a genuine quadratic system
FiniteCdga quadratic_mc_algebra() {
    auto space = GradedVectorSpace::from_items({{"1", 0}, {"p", 3}, {"q", 5}, {"r", 8}});
    std::map<std::pair<int, int>, GradedElement> products;
    products[{space.index_of("p"), space.index_of("q")}] = GradedElement::basis(space.index_of("r"));
    return FiniteCdga::make("pq", space, std::move(products), {});
}

GradedElement pair_basis(const MappingSpaceModel& m, const std::string& label, Rational c = 1) {
    return GradedElement::basis(m.space().index_of(label), c);
}

std::map<int, int> dims_by_degree_from(const MappingSpaceModel& m, int min_degree) {
    std::map<int, int> out;
    for (const auto& b : m.space().basis())
        if (b.degree >= min_degree) ++out[b.degree];
    return out;
}

}  // namespace

TEST_CASE("wedge model basis and brackets") {
    auto m = wedge_model();
    CHECK(m.space().dim() == 12);
    std::map<int, int> expected{{-1, 1}, {0, 2}, {1, 1}, {2, 3}, {4, 3}, {6, 1}};
    CHECK(dims_by_degree_from(m, -1) == expected);
    CHECK(m.space().label(m.space().slice(-1).front()) == "e5@y");
    CHECK(check_jacobi(m.algebra(), 4).pass);
}

TEST_CASE("point source gives the dual back") {
    auto point = FiniteCdga::make("point", GradedVectorSpace::from_items({{"1", 0}}), {}, {});
    auto m = mapping_space_model(point, fixtures::two_stage_y());
    CHECK(m.space().dim() == 3);
    CHECK(m.algebra().table().at(2).size() == 1);
}

TEST_CASE("model preconditions") {
    CHECK_THROWS_WITH_AS(mapping_space_model(fixtures::wedge_s2s2s5(), fixtures::three_stage_model()),
                         doctest::Contains("not two-stage"), InputError);
    CHECK_THROWS_WITH_AS(mapping_space_model(fixtures::contractible_block(2), fixtures::two_stage_y()),
                         doctest::Contains("zero differential"), InputError);
}

TEST_CASE("degree -1 slice of the self-map style model") {
    auto m = hy_model();
    auto slice = m.space().slice(-1);
    REQUIRE(slice.size() == 2);
    CHECK(m.space().label(slice[0]) == "xb@x");
    CHECK(m.space().label(slice[1]) == "yb@y");
}

TEST_CASE("mc residual") {
    auto m = wedge_model();
    CHECK(mc_residual(m, GradedElement{}).is_zero());

    for (int c : {1, 2, -3}) {
        GradedElement z = pair_basis(m, "e5@y", Rational(c));
        // brute-force oracle: expand l_2(z, z)/2 term by term
        GradedElement oracle;
        for (const auto& [i, ci] : z.terms())
            for (const auto& [j, cj] : z.terms()) {
                GradedElement t = m.algebra().bracket_basis(2, std::vector<int>{i, j});
                t *= ci * cj / 2;
                oracle += t;
            }
        CHECK(mc_residual(m, z) == oracle);
        CHECK(mc_residual(m, z).is_zero());
    }

    CHECK_THROWS_AS(mc_residual(m, pair_basis(m, "1@x")), InputError);

    auto my = hy_model();
    std::mt19937 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        GradedElement z = pair_basis(my, "xb@x", Rational(static_cast<int>(rng() % 7) - 3));
        z += pair_basis(my, "yb@y", Rational(static_cast<int>(rng() % 7) - 3));
        CHECK(mc_residual(my, z).is_zero());
    }
}

TEST_CASE("mc solver: identically zero families") {
    auto m = wedge_model();
    auto sys = solve_mc(m);
    CHECK(sys.kind == McSystem::Kind::IdenticallyZero);
    CHECK(sys.slice.size() == 1);
    CHECK(sys.system.empty());

    auto my = hy_model();
    auto sys2 = solve_mc(my);
    CHECK(sys2.kind == McSystem::Kind::IdenticallyZero);
    CHECK(sys2.slice.size() == 2);
}

TEST_CASE("mc solver: empty slice and nonlinear system") {
    // complex projective plane style source: no degree -1 pairs at all
    auto cp2 = fixtures::truncated_even_block(2, 3);
    auto m0 = mapping_space_model(cp2, fixtures::two_stage_y());
    auto sys0 = solve_mc(m0);
    CHECK(sys0.slice.empty());
    CHECK(sys0.kind == McSystem::Kind::IdenticallyZero);

    auto mq = mapping_space_model(quadratic_mc_algebra(), fixtures::two_stage_y());
    GradedElement p_x = pair_basis(mq, "p@x");
    GradedElement q_y = pair_basis(mq, "q@y");
    GradedElement both = p_x + q_y;
    auto sys = solve_mc(mq, {GradedElement{}, p_x, q_y, both});
    CHECK(sys.kind == McSystem::Kind::Nonlinear);
    REQUIRE(sys.system.size() == 1);
    CHECK(sys.system[0].poly.size() == 1);  // t_p * t_q up to a sign
    REQUIRE(sys.candidates.size() == 4);
    CHECK(sys.candidates[0].second);
    CHECK(sys.candidates[1].second);
    CHECK(sys.candidates[2].second);
    CHECK_FALSE(sys.candidates[3].second);

    auto bad = make_mc(mq, both);
    CHECK_FALSE(bad.certified);
    CHECK_THROWS_AS(twist(mq, bad), InputError);
}

TEST_CASE("twisting the wedge model at e5@y") {
    auto m = wedge_model();
    auto mc = make_mc(m, pair_basis(m, "e5@y"));
    REQUIRE(mc.certified);
    auto c = twist(m, mc);

    GradedElement image = c.twisted.bracket_or_zero(
        1, std::vector<GradedElement>{pair_basis(m, "1@x")});
    GradedElement expected = pair_basis(m, "e5@z", -1);
    CHECK(image == expected);

    for (const std::string label : {"e2@x", "e2p@x", "1@y", "e2@z", "1@z"}) {
        GradedElement img = c.twisted.bracket_or_zero(
            1, std::vector<GradedElement>{pair_basis(m, label)});
        CHECK(img.is_zero());
    }

    CHECK(c.truncated.space().dim() == 10);
    std::map<int, int> ranks = component_homotopy_ranks(c);
    std::map<int, int> expected_ranks{{1, 2}, {3, 2}, {5, 3}, {7, 1}};
    CHECK(ranks == expected_ranks);
}

TEST_CASE("untwisted component of the wedge model") {
    auto m = wedge_model();
    auto c = twist(m, make_mc(m, GradedElement{}));
    CHECK(c.truncated.space().dim() == 10);
    std::map<int, int> expected{{1, 2}, {2, 1}, {3, 3}, {5, 3}, {7, 1}};
    CHECK(component_homotopy_ranks(c) == expected);

    auto minimal = component_minimal_model(c);
    std::multiset<int> degrees;
    for (const auto& b : minimal.generators().basis()) degrees.insert(b.degree);
    CHECK(degrees == std::multiset<int>{1, 1, 2, 3, 3, 3, 5, 5, 5, 7});
    int nonzero = 0;
    for (int g = 0; g < minimal.generators().dim(); ++g)
        if (!minimal.d_of(g).empty()) ++nonzero;
    CHECK(nonzero == 3);
    CHECK(minimal.is_minimal());
}

TEST_CASE("abelian target gives a free model with zero differential") {
    auto sphere = GradedVectorSpace::from_items({{"x", 3}});
    auto y = SullivanAlgebra::make("sphere", sphere, {Polynomial{}});
    auto m = mapping_space_model(fixtures::wedge_s2s2s5(), y);
    auto c = twist(m, make_mc(m, GradedElement{}));
    auto minimal = component_minimal_model(c);
    for (int g = 0; g < minimal.generators().dim(); ++g) CHECK(minimal.d_of(g).empty());
}

TEST_CASE("self-map style component at xb@x") {
    auto m = hy_model();
    auto mc = make_mc(m, pair_basis(m, "xb@x"));
    REQUIRE(mc.certified);
    auto c = twist(m, mc);

    GradedElement img = c.twisted.bracket_or_zero(1, std::vector<GradedElement>{pair_basis(m, "1@y")});
    CHECK_FALSE(img.is_zero());
    GradedElement img_x =
        c.twisted.bracket_or_zero(1, std::vector<GradedElement>{pair_basis(m, "1@x")});
    CHECK(img_x.is_zero());

    std::map<int, int> expected{{2, 2}, {3, 1}, {7, 1}};
    CHECK(component_homotopy_ranks(c) == expected);

    auto minimal = component_minimal_model(c);
    std::multiset<int> degrees;
    for (const auto& b : minimal.generators().basis()) degrees.insert(b.degree);
    CHECK(degrees == std::multiset<int>{2, 2, 3, 7});
}

TEST_CASE("twisted differential squares to zero on every certified fixture") {
    auto m = wedge_model();
    for (const char* mc_text : {"0", "1*e5@y", "-2*e5@y", "1/2*e5@y"}) {
        auto z = dsl::parse_mc_element(mc_text, m);
        auto mc = make_mc(m, z);
        REQUIRE(mc.certified);
        CHECK_NOTHROW(twist(m, mc));  // squares-to-zero is asserted inside
    }
    auto mq = mapping_space_model(quadratic_mc_algebra(), fixtures::two_stage_y());
    for (const char* mc_text : {"1*p@x", "1*q@y", "3/2*q@y"}) {
        auto mc = make_mc(mq, dsl::parse_mc_element(mc_text, mq));
        REQUIRE(mc.certified);
        CHECK_NOTHROW(twist(mq, mc));
    }
}

TEST_CASE("euler bookkeeping for the twisted component") {
    auto m = wedge_model();
    auto c = twist(m, make_mc(m, pair_basis(m, "e5@y")));
    int total_dim = c.truncated.space().dim();
    int homology = 0;
    for (auto& [pi, rank] : component_homotopy_ranks(c)) homology += rank;
    CHECK(total_dim - homology == 2);  // = 2 x rank(l_1^z)
}

TEST_CASE("automorphism action on Maurer-Cartan elements") {
    auto m = wedge_model();
    const auto& hs = m.H.space();

    AlgebraMorphism identity;
    for (int i = 0; i < hs.dim(); ++i) identity.images.push_back(GradedElement::basis(i));
    auto z = make_mc(m, pair_basis(m, "e5@y"));
    CHECK(apply_automorphism(identity, m, z).element == z.element);

    AlgebraMorphism doubling = identity;
    doubling.images[hs.index_of("e5")] = GradedElement::basis(hs.index_of("e5"), 2);
    auto moved = apply_automorphism(doubling, m, z);
    CHECK(moved.certified);
    CHECK(moved.element == pair_basis(m, "e5@y", 2));

    // non-multiplicative map is rejected
    auto my = hy_model();
    const auto& hys = my.H.space();
    AlgebraMorphism bad;
    for (int i = 0; i < hys.dim(); ++i) bad.images.push_back(GradedElement::basis(i));
    bad.images[hys.index_of("xb")] = GradedElement::basis(hys.index_of("xb"), 2);
    // scaling xb alone breaks xb*yzb = xyzb
    CHECK_THROWS_WITH_AS(apply_automorphism(bad, my, make_mc(my, pair_basis(my, "xb@x"))),
                         doctest::Contains("product commutation"), InputError);

    // consistent rescaling works
    AlgebraMorphism good = bad;
    good.images[hys.index_of("xyzb")] = GradedElement::basis(hys.index_of("xyzb"), 2);
    good.images[hys.index_of("xzb")] = GradedElement::basis(hys.index_of("xzb"), 2);
    auto moved2 = apply_automorphism(good, my, make_mc(my, pair_basis(my, "xb@x")));
    CHECK(moved2.element == pair_basis(my, "xb@x", 2));
}

TEST_CASE("mc functoriality under the pair map") {
    auto mq = mapping_space_model(quadratic_mc_algebra(), fixtures::two_stage_y());
    const auto& hs = mq.H.space();
    AlgebraMorphism psi;
    for (int i = 0; i < hs.dim(); ++i) psi.images.push_back(GradedElement::basis(i));
    psi.images[hs.index_of("p")] = GradedElement::basis(hs.index_of("p"), 3);
    psi.images[hs.index_of("r")] = GradedElement::basis(hs.index_of("r"), 3);
    psi.validate_automorphism(mq.H);

    auto phi_pair = [&](const GradedElement& e) {
        GradedElement out;
        for (const auto& [idx, coeff] : e.terms()) {
            auto [h, l] = mq.tm.pairs[idx];
            for (const auto& [h2, c2] : psi.images[h].terms())
                out.add_term(mq.tm.pair_index.at({h2, l}), coeff * c2);
        }
        return out;
    };

    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        GradedElement z = pair_basis(mq, "p@x", Rational(static_cast<int>(rng() % 5) - 2));
        z += pair_basis(mq, "q@y", Rational(static_cast<int>(rng() % 5) - 2));
        CHECK(mc_residual(mq, phi_pair(z)) == phi_pair(mc_residual(mq, z)));
    }
}

TEST_CASE("component equivalence along an automorphism") {
    auto m = wedge_model();
    const auto& hs = m.H.space();
    AlgebraMorphism identity;
    for (int i = 0; i < hs.dim(); ++i) identity.images.push_back(GradedElement::basis(i));

    auto c0 = twist(m, make_mc(m, pair_basis(m, "e5@y")));
    auto w_id = verify_component_equivalence(identity, m, c0, c0);
    CHECK(w_id.equivalent);

    AlgebraMorphism doubling = identity;
    doubling.images[hs.index_of("e5")] = GradedElement::basis(hs.index_of("e5"), 2);
    auto c1 = twist(m, make_mc(m, pair_basis(m, "e5@y", 2)));
    auto w = verify_component_equivalence(doubling, m, c0, c1);
    CHECK(w.equivalent);
    CHECK_FALSE(w.matrices.empty());
    CHECK(component_homotopy_ranks(c0) == component_homotopy_ranks(c1));

    // hypothesis violation: mc' != psi(mc)
    auto c_zero = twist(m, make_mc(m, GradedElement{}));
    CHECK_THROWS_AS(verify_component_equivalence(identity, m, c_zero, c0), InputError);
}

TEST_CASE("group-likeness reports") {
    auto m = wedge_model();
    auto c0 = twist(m, make_mc(m, GradedElement{}));
    auto g0 = is_grouplike(c0, 4);
    CHECK_FALSE(g0.grouplike);
    bool found_top = false;
    for (const auto& e : g0.nonzero)
        if (e.arity == 2 && e.value.find("1@z") != std::string::npos) found_top = true;
    CHECK(found_top);
    for (const auto& e : g0.nonzero) CHECK_FALSE(e.contributions.empty());

    auto my = hy_model();
    auto c1 = twist(my, make_mc(my, pair_basis(my, "xb@x")));
    auto g1 = is_grouplike(c1, 4);
    CHECK(g1.grouplike);
    CHECK(g1.nonzero.empty());
    std::map<int, int> expected{{2, 2}, {3, 1}, {7, 1}};
    CHECK(g1.homology_ranks == expected);
}

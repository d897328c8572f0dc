#include <doctest.h>

#include "rhmap/sullivan.hpp"
#include "support.hpp"

using namespace rhmap;

TEST_CASE("monomial products carry the interleaving sign") {
    auto gens = GradedVectorSpace::from_items({{"x", 3}, {"y", 5}});
    int x = gens.index_of("x"), y = gens.index_of("y");

    auto xy = monomial_mul(Monomial{{{x, 1}}}, Monomial{{{y, 1}}}, gens);
    REQUIRE(xy.has_value());
    CHECK(xy->second == 1);

    auto yx = monomial_mul(Monomial{{{y, 1}}}, Monomial{{{x, 1}}}, gens);
    REQUIRE(yx.has_value());
    CHECK(yx->second == -1);
    CHECK(yx->first == xy->first);

    CHECK_FALSE(monomial_mul(Monomial{{{x, 1}}}, Monomial{{{x, 1}}}, gens).has_value());
}

TEST_CASE("derivation and d^2 validation") {
    auto y = fixtures::two_stage_y();
    // d(xz): |x| odd so the x*dz term appears with a minus sign and dies on x^2
    const auto& gens = y.generators();
    Monomial xz{{{gens.index_of("x"), 1}, {gens.index_of("z"), 1}}};
    CHECK(y.d(Polynomial{{xz, 1}}).empty());

    // broken: d w = v with |w| = |v| - 1 gives d^2 != 0 downstream
    auto bad_gens = GradedVectorSpace::from_items({{"u", 3}, {"v", 2}});
    std::vector<Polynomial> bad(2);
    bad[bad_gens.index_of("v")] = Polynomial{{Monomial{{{bad_gens.index_of("u"), 1}}}, 1}};
    CHECK_NOTHROW(SullivanAlgebra::make("ok_linear", bad_gens, bad));  // d^2 = 0, just not minimal

    std::vector<Polynomial> d2bad(2);
    d2bad[bad_gens.index_of("v")] = Polynomial{{Monomial{{{bad_gens.index_of("v"), 1}}}, 1}};
    CHECK_THROWS_WITH_AS(SullivanAlgebra::make("bad", bad_gens, d2bad),
                         doctest::Contains("not homogeneous"), InvariantError);
}

TEST_CASE("d^2 failure names the generator") {
    // (x2, y3, z4; dy = x^2, dz = xy) has d^2 z = x^3
    auto gens = GradedVectorSpace::from_items({{"x", 2}, {"y", 3}, {"z", 4}});
    std::vector<Polynomial> d(3);
    int x = gens.index_of("x"), y = gens.index_of("y");
    d[gens.index_of("y")] = Polynomial{{Monomial{{{x, 2}}}, 1}};
    d[gens.index_of("z")] = Polynomial{{Monomial{{{x, 1}, {y, 1}}}, 1}};
    CHECK_THROWS_WITH_AS(SullivanAlgebra::make("bad", gens, d), doctest::Contains("d^2 != 0 at generator z"),
                         InvariantError);
}

TEST_CASE("word length parts") {
    auto y = fixtures::two_stage_y();
    auto parts = y.wordlength_parts(y.generators().index_of("z"));
    REQUIRE(parts.size() == 1);
    CHECK(parts.count(2) == 1);
    CHECK(parts.at(2).size() == 1);

    CHECK(y.wordlength_parts(y.generators().index_of("x")).empty());

    // mixed word lengths at the polynomial layer (a degree-homogeneous
    // differential cannot mix them for positively graded generators)
    auto gens = GradedVectorSpace::from_items({{"u", 2}, {"v", 3}, {"w", 2}});
    Polynomial mixed;
    poly_add(mixed, Polynomial{{Monomial{{{gens.index_of("v"), 1}}}, 1}});
    poly_add(mixed, Polynomial{{Monomial{{{gens.index_of("u"), 1}, {gens.index_of("v"), 1}}}, 1}});
    auto split = split_by_word_length(mixed);
    REQUIRE(split.size() == 2);
    CHECK(split.at(1).size() == 1);
    CHECK(split.at(2).size() == 1);
}

TEST_CASE("minimality") {
    CHECK(fixtures::two_stage_y().is_minimal());
    auto gens = GradedVectorSpace::from_items({{"u", 3}, {"v", 2}});
    std::vector<Polynomial> d(2);
    d[gens.index_of("v")] = Polynomial{{Monomial{{{gens.index_of("u"), 1}}}, 1}};
    CHECK_FALSE(SullivanAlgebra::make("linear", gens, d).is_minimal());

    auto sphere = GradedVectorSpace::from_items({{"x", 3}});
    CHECK(SullivanAlgebra::make("sphere", sphere, {Polynomial{}}).is_minimal());
}

TEST_CASE("two-stage split") {
    auto y = fixtures::two_stage_y();
    auto split = y.two_stage_split();
    CHECK(split.closed.size() == 2);
    CHECK(split.remaining.size() == 1);
    CHECK(y.generators().label(split.remaining[0]) == "z");

    auto sphere = GradedVectorSpace::from_items({{"x", 3}});
    auto s = SullivanAlgebra::make("sphere", sphere, {Polynomial{}});
    auto sp = s.two_stage_split();
    CHECK(sp.closed.size() == 1);
    CHECK(sp.remaining.empty());

    // three-stage and valid: dw involves the non-closed u
    CHECK_THROWS_WITH_AS(fixtures::three_stage_model().two_stage_split(),
                         doctest::Contains("non-closed generator u"), InputError);

    // the same error path on a deliberately broken table (d^2 != 0, so it can
    // only be built unchecked)
    auto gens = GradedVectorSpace::from_items({{"x", 2}, {"y", 3}, {"z", 4}});
    std::vector<Polynomial> d(3);
    d[gens.index_of("y")] = Polynomial{{Monomial{{{gens.index_of("x"), 2}}}, 1}};
    d[gens.index_of("z")] =
        Polynomial{{Monomial{{{gens.index_of("x"), 1}, {gens.index_of("y"), 1}}}, 1}};
    auto broken = SullivanAlgebra::make_unchecked("broken", gens, d);
    CHECK_THROWS_WITH_AS(broken.two_stage_split(), doctest::Contains("non-closed generator y"),
                         InputError);
}

TEST_CASE("generator degrees must be positive") {
    auto gens = GradedVectorSpace::from_items({{"x", 0}});
    CHECK_THROWS_AS(SullivanAlgebra::make("bad", gens, {Polynomial{}}), InvariantError);
}

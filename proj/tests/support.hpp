#pragma once

// Fixture builders shared by the unit and acceptance suites.

#include <random>
#include <functional>

#include "rhmap/cdga.hpp"
#include "rhmap/linfty.hpp"
#include "rhmap/sullivan.hpp"

namespace fixtures {

using namespace rhmap;

inline FiniteCdga wedge_s2s2s5() {
    auto space = GradedVectorSpace::from_items({{"1", 0}, {"e2", 2}, {"e2p", 2}, {"e5", 5}});
    return FiniteCdga::make("s2s2s5", space, {}, {});
}

// six-dimensional algebra with xb*yzb = xzb*yb = xyzb
inline FiniteCdga h_of_y() {
    auto space = GradedVectorSpace::from_items(
        {{"1", 0}, {"xb", 3}, {"yb", 5}, {"xzb", 10}, {"yzb", 12}, {"xyzb", 15}});
    std::map<std::pair<int, int>, GradedElement> products;
    int top = space.index_of("xyzb");
    products[{space.index_of("xb"), space.index_of("yzb")}] = GradedElement::basis(top);
    products[{space.index_of("xzb"), space.index_of("yb")}] = GradedElement::basis(top);
    return FiniteCdga::make("h_of_y", space, std::move(products), {});
}

// span{1, b, db} with b of the given degree, zero products in positive degrees
inline FiniteCdga contractible_block(int bdeg) {
    auto space = GradedVectorSpace::from_items(
        {{"1", 0}, {"b" + std::to_string(bdeg), bdeg}, {"c" + std::to_string(bdeg + 1), bdeg + 1}});
    std::map<int, GradedElement> differential;
    differential[space.index_of("b" + std::to_string(bdeg))] =
        GradedElement::basis(space.index_of("c" + std::to_string(bdeg + 1)));
    return FiniteCdga::make("contractible" + std::to_string(bdeg), space, {}, std::move(differential));
}

inline FiniteCdga odd_sphere_block(int deg) {
    auto space = GradedVectorSpace::from_items({{"1", 0}, {"s" + std::to_string(deg), deg}});
    return FiniteCdga::make("odd_sphere" + std::to_string(deg), space, {}, {});
}

// Q[e]/(e^height) on an even generator
inline FiniteCdga truncated_even_block(int deg, int height) {
    std::vector<BasisItem> items{{"1", 0}};
    for (int k = 1; k < height; ++k)
        items.push_back({"p" + std::to_string(deg) + "e" + std::to_string(k), deg * k});
    auto space = GradedVectorSpace::from_items(items);
    std::map<std::pair<int, int>, GradedElement> products;
    for (int a = 1; a < height; ++a)
        for (int b = 1; b < height; ++b) {
            if (a + b >= height) continue;
            products[{space.index_of("p" + std::to_string(deg) + "e" + std::to_string(a)),
                      space.index_of("p" + std::to_string(deg) + "e" + std::to_string(b))}] =
                GradedElement::basis(
                    space.index_of("p" + std::to_string(deg) + "e" + std::to_string(a + b)));
        }
    return FiniteCdga::make("even" + std::to_string(deg) + "h" + std::to_string(height), space,
                            std::move(products), {});
}

// {1, a2, x3, q4} with a*a = q and dx = q: the square of a class is exact
inline FiniteCdga nonformal_block() {
    auto space = GradedVectorSpace::from_items({{"1", 0}, {"a", 2}, {"x", 3}, {"q", 4}});
    std::map<std::pair<int, int>, GradedElement> products;
    products[{space.index_of("a"), space.index_of("a")}] = GradedElement::basis(space.index_of("q"));
    std::map<int, GradedElement> differential;
    differential[space.index_of("x")] = GradedElement::basis(space.index_of("q"));
    return FiniteCdga::make("square_exact", space, std::move(products), std::move(differential));
}

// relabel every non-unit basis element with a suffix so tensor factors of the
// same shape stay distinguishable
inline FiniteCdga tag_labels(const FiniteCdga& a, const std::string& tag) {
    const auto& s = a.space();
    auto relabel = [&](int i) { return i == a.unit() ? std::string("1") : s.label(i) + tag; };
    std::vector<BasisItem> items;
    for (int i = 0; i < s.dim(); ++i) items.push_back({relabel(i), s.degree(i)});
    auto space = GradedVectorSpace::from_items(items);
    auto carry = [&](const GradedElement& e) {
        GradedElement out;
        for (const auto& [i, c] : e.terms()) out.add_term(space.index_of(relabel(i)), c);
        return out;
    };
    std::map<std::pair<int, int>, GradedElement> products;
    std::map<int, GradedElement> differential;
    for (int i = 0; i < s.dim(); ++i) {
        if (!a.d(i).is_zero()) differential[space.index_of(relabel(i))] = carry(a.d(i));
        if (s.degree(i) == 0) continue;
        for (int j = 0; j < s.dim(); ++j) {
            if (s.degree(j) == 0) continue;
            GradedElement p = a.mul(i, j);
            if (!p.is_zero())
                products[{space.index_of(relabel(i)), space.index_of(relabel(j))}] = carry(p);
        }
    }
    return FiniteCdga::make(a.name() + tag, std::move(space), std::move(products),
                            std::move(differential));
}

inline FiniteCdga random_cdga(std::mt19937& rng) {
    int counter = 0;
    auto pick_block = [&](int which) {
        FiniteCdga block = [&] {
            switch (which) {
                case 0: return odd_sphere_block(3 + 2 * static_cast<int>(rng() % 2));
                case 1:
                    return truncated_even_block(2 + 2 * static_cast<int>(rng() % 2),
                                                2 + static_cast<int>(rng() % 2));
                case 2: return contractible_block(2 + static_cast<int>(rng() % 3));
                default: return nonformal_block();
            }
        }();
        return tag_labels(block, "_f" + std::to_string(counter++));
    };
    FiniteCdga a = pick_block(static_cast<int>(rng() % 4));
    int extra = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < extra; ++i) a = cdga_tensor(a, pick_block(static_cast<int>(rng() % 4)));
    int cap = 8 + static_cast<int>(rng() % 5);
    return cdga_truncate(a, cap);
}

inline SullivanAlgebra two_stage_y() {
    auto gens = GradedVectorSpace::from_items({{"x", 3}, {"y", 5}, {"z", 7}});
    std::vector<Polynomial> d(3);
    Monomial xy{{{gens.index_of("x"), 1}, {gens.index_of("y"), 1}}};
    d[gens.index_of("z")] = Polynomial{{xy, 1}};
    return SullivanAlgebra::make("y_model", gens, std::move(d));
}

// (e4, e7; d e7 = e4^2)
inline SullivanAlgebra even_sphere_model() {
    auto gens = GradedVectorSpace::from_items({{"e4", 4}, {"e7", 7}});
    std::vector<Polynomial> d(2);
    Monomial sq{{{gens.index_of("e4"), 2}}};
    d[gens.index_of("e7")] = Polynomial{{sq, 1}};
    return SullivanAlgebra::make("even_sphere", gens, std::move(d));
}

// (x3, y3, u5, w7; du = xy, dw = xu): valid and genuinely three-stage
inline SullivanAlgebra three_stage_model() {
    auto gens = GradedVectorSpace::from_items({{"x", 3}, {"y", 3}, {"u", 5}, {"w", 7}});
    std::vector<Polynomial> d(4);
    Monomial xy{{{gens.index_of("x"), 1}, {gens.index_of("y"), 1}}};
    Monomial xu{{{gens.index_of("x"), 1}, {gens.index_of("u"), 1}}};
    d[gens.index_of("u")] = Polynomial{{xy, 1}};
    d[gens.index_of("w")] = Polynomial{{xu, 1}};
    return SullivanAlgebra::make("three_stage", gens, std::move(d));
}

// (a2, b2, x3, y3, z4; dx = a^2, dy = ab, dz = ay - bx): the d^2 = 0
// cancellation is nontrivial, pinning the bracket sign conventions
inline SullivanAlgebra quadratic_mixing_model() {
    auto gens = GradedVectorSpace::from_items({{"a", 2}, {"b", 2}, {"x", 3}, {"y", 3}, {"z", 4}});
    std::vector<Polynomial> d(5);
    int a = gens.index_of("a"), b = gens.index_of("b"), x = gens.index_of("x"), y = gens.index_of("y");
    d[gens.index_of("x")] = Polynomial{{Monomial{{{a, 2}}}, 1}};
    d[gens.index_of("y")] = Polynomial{{Monomial{{{a, 1}, {b, 1}}}, 1}};
    d[gens.index_of("z")] = Polynomial{{Monomial{{{a, 1}, {y, 1}}}, 1}, {Monomial{{{b, 1}, {x, 1}}}, -1}};
    return SullivanAlgebra::make("quadratic_mixing", gens, std::move(d));
}

inline SullivanAlgebra random_two_stage(std::mt19937& rng) {
    // closed generators first, then one or two whose differential is a random
    // polynomial in the closed ones (two-stage and d^2 = 0 by construction)
    std::vector<BasisItem> items;
    int nclosed = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nclosed; ++i)
        items.push_back({"p" + std::to_string(i), 2 + static_cast<int>(rng() % 4)});
    auto closed = GradedVectorSpace::from_items(items);

    // candidate monomials of word length >= 2 by total degree
    std::map<int, std::vector<Monomial>> by_degree;
    std::function<void(int, Monomial&, int)> gen = [&](int from, Monomial& acc, int length) {
        if (length >= 2) {
            int deg = monomial_degree(acc, closed);
            if (deg <= 24) by_degree[deg].push_back(acc);
        }
        if (length >= 3) return;
        for (int g = from; g < closed.dim(); ++g) {
            if ((closed.degree(g) & 1) && !acc.factors.empty() && acc.factors.back().first == g) continue;
            if (!acc.factors.empty() && acc.factors.back().first == g)
                acc.factors.back().second++;
            else
                acc.factors.push_back({g, 1});
            gen(g, acc, length + 1);
            if (acc.factors.back().second > 1)
                acc.factors.back().second--;
            else
                acc.factors.pop_back();
        }
    };
    Monomial empty;
    gen(0, empty, 0);

    std::vector<BasisItem> all = items;
    std::vector<std::pair<std::string, Polynomial>> diffs;
    int extra = 1 + static_cast<int>(rng() % 2);
    std::vector<int> degrees_with_monomials;
    for (auto& [deg, monos] : by_degree) degrees_with_monomials.push_back(deg);
    for (int i = 0; i < extra && !degrees_with_monomials.empty(); ++i) {
        int deg = degrees_with_monomials[rng() % degrees_with_monomials.size()];
        if (deg - 1 <= 0) continue;
        std::string label = "q" + std::to_string(i);
        all.push_back({label, deg - 1});
        Polynomial p;
        const auto& monos = by_degree[deg];
        int picks = 1 + static_cast<int>(rng() % std::min<std::size_t>(2, monos.size()));
        for (int k = 0; k < picks; ++k) {
            Rational c(1 + static_cast<int>(rng() % 3));
            if (rng() % 2) c = -c;
            poly_add(p, Polynomial{{monos[rng() % monos.size()], c}});
        }
        diffs.emplace_back(label, std::move(p));
    }
    auto gens = GradedVectorSpace::from_items(all);
    std::vector<Polynomial> d(gens.dim());
    for (auto& [label, p] : diffs) {
        // reindex monomials from the closed space into the full space
        Polynomial moved;
        for (const auto& [m, c] : p) {
            Monomial m2 = m;
            for (auto& [g, e] : m2.factors) g = gens.index_of(closed.label(g));
            moved[m2] = c;
        }
        d[gens.index_of(label)] = std::move(moved);
    }
    return SullivanAlgebra::make("random_two_stage", gens, std::move(d));
}

// basis x(1), u(2), s(3), m(4): l1(s) = u, l2(x,x) = u, l2(x,s) = m.
// Homology is {x, m}; the transferred triple bracket is 3m on (x,x,x).
inline LInfinityAlgebra massey_dgl() {
    auto space = GradedVectorSpace::from_items({{"x", 1}, {"u", 2}, {"s", 3}, {"m", 4}});
    LInfinityAlgebra L{space};
    int x = space.index_of("x"), u = space.index_of("u"), s = space.index_of("s"), m = space.index_of("m");
    {
        std::vector<int> t{s};
        L.set_bracket(1, t, GradedElement::basis(u));
    }
    {
        std::vector<int> t{x, x};
        L.set_bracket(2, t, GradedElement::basis(u));
    }
    {
        std::vector<int> t{x, s};
        L.set_bracket(2, t, GradedElement::basis(m));
    }
    L.set_arity_bound(3);
    return L;
}

}  // namespace fixtures

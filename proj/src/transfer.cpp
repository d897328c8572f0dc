#include "rhmap/transfer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "rhmap/error.hpp"

namespace rhmap {

int RootedTree::leaf_count() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children) n += c.leaf_count();
    return n;
}

int RootedTree::internal_vertices() const {
    if (is_leaf()) return 0;
    int n = 1;
    for (const auto& c : children) n += c.internal_vertices();
    return n;
}

int RootedTree::operator_degree() const {
    if (is_leaf()) return 0;
    int d = 1 + static_cast<int>(children.size()) - 2;  // root homotopy edge + vertex
    for (const auto& c : children) d += c.operator_degree();
    return d;
}

std::string RootedTree::render() const {
    if (is_leaf()) return "*";
    std::string s = "(";
    for (const auto& c : children) s += c.render();
    s += ")";
    return s;
}

Integer tree_automorphisms(const RootedTree& t) {
    if (t.is_leaf()) return 1;
    Integer total = 1;
    std::size_t i = 0;
    while (i < t.children.size()) {
        std::size_t j = i;
        while (j < t.children.size() && t.children[j] == t.children[i]) ++j;
        Integer mult_fact = 1;
        for (std::size_t m = 2; m <= j - i; ++m) mult_fact *= m;
        Integer aut = tree_automorphisms(t.children[i]);
        Integer aut_pow = 1;
        for (std::size_t m = 0; m < j - i; ++m) aut_pow *= aut;
        total *= mult_fact * aut_pow;
        i = j;
    }
    return total;
}

namespace {

// all trees with the exact leaf count, children sorted by code
std::vector<RootedTree> trees_with_leaves(int leaves, int max_vertex_arity) {
    if (leaves == 1) return {RootedTree{}};
    std::vector<RootedTree> out;
    // choose a sorted child multiset: recursion over (remaining leaves, number
    // of remaining child slots is free, minimum child code)
    std::function<void(int, std::vector<RootedTree>&)> build = [&](int remaining,
                                                                   std::vector<RootedTree>& acc) {
        if (remaining == 0) {
            if (static_cast<int>(acc.size()) >= 2 &&
                static_cast<int>(acc.size()) <= max_vertex_arity) {
                RootedTree t;
                t.children = acc;
                std::sort(t.children.begin(), t.children.end());
                out.push_back(std::move(t));
            }
            return;
        }
        if (static_cast<int>(acc.size()) >= max_vertex_arity) return;
        for (int take = 1; take <= remaining; ++take) {
            // a first child consuming every leaf would be a unary root
            if (acc.empty() && take == remaining) continue;
            for (const auto& sub : trees_with_leaves(take, max_vertex_arity)) {
                if (!acc.empty() && sub.code() < acc.back().code()) continue;  // keep sorted
                acc.push_back(sub);
                build(remaining - take, acc);
                acc.pop_back();
            }
        }
    };
    std::vector<RootedTree> acc;
    build(leaves, acc);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<std::pair<RootedTree, Integer>> enumerate_trees(int leaf_count, int max_vertex_arity) {
    if (leaf_count < 2) throw InputError("enumerate_trees requires at least 2 leaves");
    std::vector<std::pair<RootedTree, Integer>> out;
    for (auto& t : trees_with_leaves(leaf_count, max_vertex_arity))
        out.emplace_back(t, tree_automorphisms(t));
    return out;
}

GradedElement TransferProblem::apply_include(const GradedElement& h) const {
    GradedElement out;
    for (const auto& [i, c] : h.terms()) {
        GradedElement t = include.at(i);
        t *= c;
        out += t;
    }
    return out;
}

GradedElement TransferProblem::apply_project(const GradedElement& a) const {
    GradedElement out;
    for (const auto& [i, c] : a.terms()) {
        GradedElement t = project.at(i);
        t *= c;
        out += t;
    }
    return out;
}

GradedElement TransferProblem::apply_homotopy(const GradedElement& a) const {
    GradedElement out;
    for (const auto& [i, c] : a.terms()) {
        GradedElement t = homotopy.at(i);
        t *= c;
        out += t;
    }
    return out;
}

void TransferProblem::validate() const {
    if (!ambient) throw InputError("transfer problem without ambient algebra");
    const auto& space = ambient->space();
    auto l1 = [&](const GradedElement& e) {
        return ambient->bracket_or_zero(1, std::span<const GradedElement>(&e, 1));
    };
    for (int h = 0; h < target.dim(); ++h) {
        if (!(apply_project(include.at(h)) == GradedElement::basis(h)))
            throw InvariantError("transfer retract: qi != id at " + target.label(h));
        if (!apply_homotopy(include.at(h)).is_zero())
            throw InvariantError("transfer retract: Ki != 0 at " + target.label(h));
    }
    for (int a = 0; a < space.dim(); ++a) {
        GradedElement e = GradedElement::basis(a);
        GradedElement lhs = e - apply_include(apply_project(e));
        GradedElement rhs = l1(apply_homotopy(e)) + apply_homotopy(l1(e));
        if (!(lhs == rhs))
            throw InvariantError("transfer retract: homotopy identity fails at " + space.label(a));
        if (!apply_project(apply_homotopy(e)).is_zero())
            throw InvariantError("transfer retract: qK != 0 at " + space.label(a));
        if (!apply_homotopy(apply_homotopy(e)).is_zero())
            throw InvariantError("transfer retract: KK != 0 at " + space.label(a));
    }
}

TransferProblem trivial_retract(const LInfinityAlgebra& L) {
    TransferProblem p;
    p.ambient = &L;
    p.target = L.space();
    for (int i = 0; i < L.space().dim(); ++i) {
        p.include.push_back(GradedElement::basis(i));
        p.project.push_back(GradedElement::basis(i));
        p.homotopy.push_back({});
    }
    return p;
}

TransferProblem retract_of_chain(const LInfinityAlgebra& L) {
    ChainRetract r = chain_retract(
        L.space(),
        [&](int i) {
            GradedElement e = GradedElement::basis(i);
            return L.bracket_or_zero(1, std::span<const GradedElement>(&e, 1));
        },
        -1);
    TransferProblem p;
    p.ambient = &L;
    p.target = std::move(r.homology);
    p.include = std::move(r.include);
    p.project = std::move(r.project);
    p.homotopy = std::move(r.homotopy);
    p.validate();
    return p;
}

TransferProblem tensor_retract(const ChainRetract& r, const LInfinityAlgebra& L,
                               const TensorModel& ambient) {
    TransferProblem p;
    p.ambient = &ambient.algebra;
    const auto& ls = L.space();

    std::vector<BasisItem> items;
    for (int h = 0; h < r.homology.dim(); ++h)
        for (int l = 0; l < ls.dim(); ++l)
            items.push_back({TensorModel::pair_label(r.homology.label(h), ls.label(l)),
                             ls.degree(l) - r.homology.degree(h)});
    p.target = GradedVectorSpace::from_items(std::move(items));

    auto target_index = [&](int h, int l) {
        return p.target.index_of(TensorModel::pair_label(r.homology.label(h), ls.label(l)));
    };
    auto embed_ambient = [&](const GradedElement& ea, int l) {
        GradedElement out;
        for (const auto& [a, c] : ea.terms()) out.add_term(ambient.pair_index.at({a, l}), c);
        return out;
    };
    auto embed_target = [&](const GradedElement& eh, int l) {
        GradedElement out;
        for (const auto& [h, c] : eh.terms()) out.add_term(target_index(h, l), c);
        return out;
    };

    p.include.assign(p.target.dim(), {});
    for (int h = 0; h < r.homology.dim(); ++h)
        for (int l = 0; l < ls.dim(); ++l) p.include[target_index(h, l)] = embed_ambient(r.include[h], l);

    p.project.assign(ambient.algebra.space().dim(), {});
    p.homotopy.assign(ambient.algebra.space().dim(), {});
    for (int x = 0; x < ambient.algebra.space().dim(); ++x) {
        auto [a, l] = ambient.pairs[x];
        p.project[x] = embed_target(r.project[a], l);
        p.homotopy[x] = embed_ambient(r.homotopy[a], l);
    }
    p.validate();
    return p;
}

namespace {

GradedElement eval_node(const RootedTree& t, const TransferProblem& p,
                        std::span<const GradedElement> args, std::span<const int> arg_degrees,
                        bool is_root) {
    if (t.is_leaf()) return p.apply_include(args[0]);

    std::vector<GradedElement> values;
    values.reserve(t.children.size());
    int sign = 1;
    int prefix_degree = 0;
    std::size_t offset = 0;
    for (const auto& child : t.children) {
        int nleaves = child.leaf_count();
        int block_degree = 0;
        for (int k = 0; k < nleaves; ++k) block_degree += arg_degrees[offset + k];
        // the child composite crosses every earlier argument block
        if ((child.operator_degree() & 1) && (prefix_degree & 1)) sign = -sign;
        values.push_back(eval_node(child, p, args.subspan(offset, nleaves),
                                   arg_degrees.subspan(offset, nleaves), false));
        prefix_degree += block_degree;
        offset += nleaves;
    }
    GradedElement v = p.ambient->bracket_or_zero(static_cast<int>(t.children.size()), values);
    v *= Rational(sign);
    return is_root ? p.apply_project(v) : p.apply_homotopy(v);
}

}  // namespace

GradedElement eval_tree_ordered(const RootedTree& t, const TransferProblem& p,
                                std::span<const GradedElement> args) {
    if (static_cast<int>(args.size()) != t.leaf_count())
        throw InputError("eval_tree: argument count does not match leaf count");
    std::vector<int> degrees;
    degrees.reserve(args.size());
    for (const auto& a : args) {
        auto d = a.homogeneous_degree(p.target);
        if (!d && !a.is_zero()) throw InputError("eval_tree: arguments must be homogeneous");
        degrees.push_back(d.value_or(0));
    }
    return eval_node(t, p, args, degrees, true);
}

GradedElement eval_tree(const RootedTree& t, const TransferProblem& p,
                        std::span<const GradedElement> args) {
    const int k = t.leaf_count();
    if (static_cast<int>(args.size()) != k)
        throw InputError("eval_tree: argument count does not match leaf count");
    std::vector<int> degrees(k);
    for (int i = 0; i < k; ++i) {
        auto d = args[i].homogeneous_degree(p.target);
        if (!d && !args[i].is_zero()) throw InputError("eval_tree: arguments must be homogeneous");
        degrees[i] = d.value_or(0);
    }

    GradedElement acc;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<GradedElement> permuted(k);
    do {
        int chi = antisymmetry_sign(perm, degrees);
        for (int i = 0; i < k; ++i) permuted[i] = args[perm[i]];
        GradedElement v = eval_tree_ordered(t, p, permuted);
        v *= Rational(chi);
        acc += v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc *= Rational(1, tree_automorphisms(t));
    return acc;
}

LInfinityAlgebra transfer(const TransferProblem& p, int max_arity) {
    p.validate();
    LInfinityAlgebra out{p.target};
    out.set_arity_bound(std::max(2, max_arity));

    // l'_1 = q l_1 i
    for (int h = 0; h < p.target.dim(); ++h) {
        GradedElement e = p.apply_include(GradedElement::basis(h));
        GradedElement v = p.apply_project(p.ambient->bracket_or_zero(1, std::span<const GradedElement>(&e, 1)));
        if (!v.is_zero()) {
            std::vector<int> tuple{h};
            out.set_bracket(1, tuple, std::move(v));
        }
    }

    for (int k = 2; k <= max_arity; ++k) {
        auto trees = enumerate_trees(k, p.ambient->arity_bound());
        std::vector<int> tuple(k, 0);
        std::function<void(int, int)> rec = [&](int pos, int lo) {
            if (pos == k) {
                bool even_repeat = false;
                for (int t = 1; t < k; ++t)
                    if (tuple[t] == tuple[t - 1] && (p.target.degree(tuple[t]) & 1) == 0) even_repeat = true;
                if (even_repeat) return;
                std::vector<GradedElement> args;
                args.reserve(k);
                for (int i : tuple) args.push_back(GradedElement::basis(i));
                GradedElement total;
                for (const auto& [tree, aut] : trees) total += eval_tree(tree, p, args);
                if (!total.is_zero()) out.set_bracket(k, tuple, std::move(total));
                return;
            }
            for (int i = lo; i < p.target.dim(); ++i) {
                tuple[pos] = i;
                rec(pos + 1, i);
            }
        };
        rec(0, 0);
    }
    return out;
}

std::vector<std::pair<std::string, GradedElement>> transfer_contributions(const TransferProblem& p,
                                                                          int arity,
                                                                          std::span<const int> tuple) {
    std::vector<GradedElement> args;
    for (int i : tuple) args.push_back(GradedElement::basis(i));
    std::vector<std::pair<std::string, GradedElement>> out;
    for (const auto& [tree, aut] : enumerate_trees(arity, p.ambient->arity_bound())) {
        GradedElement v = eval_tree(tree, p, args);
        if (!v.is_zero()) out.emplace_back(tree.render(), std::move(v));
    }
    return out;
}

}  // namespace rhmap

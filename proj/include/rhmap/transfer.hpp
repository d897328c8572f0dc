#pragma once

#include <span>
#include <string>
#include <vector>

#include "rhmap/cdga.hpp"
#include "rhmap/linfty.hpp"

namespace rhmap {

// Isomorphism class of a rooted tree with unordered children; every internal
// vertex has arity >= 2. Children are kept sorted by canonical code, so equal
// shapes compare equal.
struct RootedTree {
    std::vector<RootedTree> children;  // empty = leaf

    bool is_leaf() const { return children.empty(); }
    int leaf_count() const;
    int internal_vertices() const;
    // Total degree of the composite this subtree evaluates to, including the
    // homotopy on its root edge: each arity-m vertex contributes m-2, each
    // internal edge (subtree root included) contributes +1. Leaves are 0.
    int operator_degree() const;
    std::string render() const;  // "*" for a leaf, "(...)" for a vertex
    std::string code() const { return render(); }

    bool operator<(const RootedTree& o) const { return code() < o.code(); }
    bool operator==(const RootedTree& o) const { return code() == o.code(); }
};

// |Aut(T)| by recursive multiset symmetry counting.
Integer tree_automorphisms(const RootedTree& t);

// All isomorphism classes with the given leaf count and vertex arities in
// [2, max_vertex_arity], with their automorphism orders. Deterministic order.
std::vector<std::pair<RootedTree, Integer>> enumerate_trees(int leaf_count, int max_vertex_arity);

// Retract data for homotopy transfer: target space with maps i (include),
// q (project), K (homotopy) against an ambient L-infinity algebra.
struct TransferProblem {
    const LInfinityAlgebra* ambient = nullptr;
    GradedVectorSpace target;
    std::vector<GradedElement> include;   // target index -> ambient element
    std::vector<GradedElement> project;   // ambient index -> target element
    std::vector<GradedElement> homotopy;  // ambient index -> ambient element

    GradedElement apply_include(const GradedElement& h) const;
    GradedElement apply_project(const GradedElement& a) const;
    GradedElement apply_homotopy(const GradedElement& a) const;

    // qi = id; id - iq = l_1 K + K l_1; Ki = 0, qK = 0, KK = 0.
    void validate() const;
};

TransferProblem trivial_retract(const LInfinityAlgebra& L);
TransferProblem retract_of_chain(const LInfinityAlgebra& L);  // splits (L, l_1)
// (i,q,K) tensored with the identity of L's basis over a tensor model.
TransferProblem tensor_retract(const ChainRetract& r, const LInfinityAlgebra& L,
                               const TensorModel& ambient);

// The composite of one tree on ordered arguments: leaves apply i, vertices
// apply the ambient bracket, internal edges apply K, the root applies q.
// Koszul signs enter where a composite of nonzero degree crosses earlier
// argument blocks. args must be homogeneous target elements.
GradedElement eval_tree_ordered(const RootedTree& t, const TransferProblem& p,
                                std::span<const GradedElement> args);

// Full symmetrization over leaf assignments with antisymmetry signs, weighted
// by 1/|Aut(T)|; for the k-corolla this reduces to q l_k i^k on the arguments.
GradedElement eval_tree(const RootedTree& t, const TransferProblem& p,
                        std::span<const GradedElement> args);

// Transferred structure l'_k = sum over trees of eval_tree, k <= max_arity,
// plus l'_1 = q l_1 i.
LInfinityAlgebra transfer(const TransferProblem& p, int max_arity);

// Per-tree contributions at one basis tuple, for provenance reporting.
std::vector<std::pair<std::string, GradedElement>> transfer_contributions(const TransferProblem& p,
                                                                          int arity,
                                                                          std::span<const int> tuple);

}  // namespace rhmap

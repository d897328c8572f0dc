#include "rhmap/verify.hpp"

#include <functional>
#include <sstream>

#include "rhmap/error.hpp"

namespace rhmap {

bool tables_equal(const LInfinityAlgebra& a, const LInfinityAlgebra& b, int max_arity,
                  std::string* mismatch) {
    auto describe = [&](int arity, const std::vector<int>& tuple, const GradedVectorSpace& s) {
        std::ostringstream os;
        os << "arity " << arity << " (";
        for (std::size_t t = 0; t < tuple.size(); ++t) os << (t ? ", " : "") << s.label(tuple[t]);
        os << ")";
        return os.str();
    };
    for (const auto& [arity, entries] : a.table()) {
        if (arity > max_arity) continue;
        for (const auto& [tuple, value] : entries)
            if (!(b.bracket_basis(arity, tuple) == value)) {
                if (mismatch) *mismatch = describe(arity, tuple, a.space()) + " differs";
                return false;
            }
    }
    for (const auto& [arity, entries] : b.table()) {
        if (arity > max_arity) continue;
        for (const auto& [tuple, value] : entries)
            if (!(a.bracket_basis(arity, tuple) == value)) {
                if (mismatch) *mismatch = describe(arity, tuple, b.space()) + " differs";
                return false;
            }
    }
    return true;
}

TransferAgreement check_transfer_agreement(const MappingSpaceModel& m, int max_arity) {
    TransferAgreement result;
    std::ostringstream detail;

    // transfer over the identity retract must reproduce the model exactly
    {
        TransferProblem p = trivial_retract(m.algebra());
        LInfinityAlgebra t = transfer(p, max_arity);
        std::string why;
        result.trivial_agreement = tables_equal(t, m.algebra(), max_arity, &why);
        if (!result.trivial_agreement) detail << "identity retract: " << why << "; ";
    }

    // perturbed quasi-isomorphic source algebra: the homotopy acts nontrivially
    FiniteCdga perturbed = perturbed_extension(m.H);
    ChainRetract r = harmonious_decomposition(perturbed);
    FiniteCdga h_of_perturbed = cohomology_from_retract(perturbed, r);
    TensorModel closed = tensor_model(h_of_perturbed, m.L);
    TensorModel ambient = tensor_model(perturbed, m.L);
    TransferProblem p = tensor_retract(r, m.L, ambient);
    {
        LInfinityAlgebra t = transfer(p, max_arity);
        std::string why;
        result.perturbed_agreement = tables_equal(t, closed.algebra, max_arity, &why);
        if (!result.perturbed_agreement) detail << "perturbed source " << perturbed.name() << ": " << why << "; ";
    }

    // every tree with >= 2 internal vertices kills every ordered tuple
    result.multi_vertex_vanishing = true;
    long trees_checked = 0, tuples_checked = 0;
    for (int k = 2; k <= max_arity && result.multi_vertex_vanishing; ++k) {
        for (const auto& [tree, aut] : enumerate_trees(k, ambient.algebra.arity_bound())) {
            if (tree.internal_vertices() < 2) continue;
            ++trees_checked;
            std::vector<int> tuple(k, 0);
            std::function<bool(int)> rec = [&](int pos) -> bool {
                if (pos == k) {
                    ++tuples_checked;
                    std::vector<GradedElement> args;
                    args.reserve(k);
                    for (int i : tuple) args.push_back(GradedElement::basis(i));
                    if (!eval_tree_ordered(tree, p, args).is_zero()) {
                        detail << "tree " << tree.render() << " is nonzero on a tuple; ";
                        return false;
                    }
                    return true;
                }
                for (int i = 0; i < p.target.dim(); ++i) {
                    tuple[pos] = i;
                    if (!rec(pos + 1)) return false;
                }
                return true;
            };
            if (!rec(0)) {
                result.multi_vertex_vanishing = false;
                break;
            }
        }
    }
    detail << trees_checked << " multi-vertex trees over " << tuples_checked << " ordered tuples";
    result.detail = detail.str();
    return result;
}

}  // namespace rhmap

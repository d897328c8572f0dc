#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rhmap/cdga.hpp"
#include "rhmap/graded.hpp"
#include "rhmap/sullivan.hpp"

namespace rhmap {

// Graded space with antisymmetric brackets l_k of degree k-2. Brackets are
// stored only on ascending basis tuples; evaluation extends by the
// antisymmetry sign. Tuples repeating an even-degree element vanish
// identically and are never stored.
class LInfinityAlgebra {
public:
    LInfinityAlgebra() = default;
    explicit LInfinityAlgebra(GradedVectorSpace space) : space_(std::move(space)) {}

    const GradedVectorSpace& space() const { return space_; }
    int arity_bound() const { return arity_bound_; }
    void set_arity_bound(int k) { arity_bound_ = std::max(arity_bound_, k); }

    // Canonicalizes the tuple; validates the degree law
    // |output| = sum |inputs| + k - 2 (set_bracket only).
    void set_bracket(int arity, std::span<const int> tuple, GradedElement value);
    void set_bracket_unchecked(int arity, std::span<const int> tuple, GradedElement value);

    const std::map<int, std::map<std::vector<int>, GradedElement>>& table() const { return table_; }

    // Antisymmetric extension on a basis tuple.
    GradedElement bracket_basis(int arity, std::span<const int> tuple) const;
    // Multilinear extension; throws InputError above the arity bound.
    GradedElement bracket(int arity, std::span<const GradedElement> args) const;
    // Same but silently zero above the bound (brackets beyond it vanish).
    GradedElement bracket_or_zero(int arity, std::span<const GradedElement> args) const;

    bool minimal() const;
    std::vector<std::string> table_degree_violations() const;

private:
    GradedVectorSpace space_;
    int arity_bound_ = 0;
    std::map<int, std::map<std::vector<int>, GradedElement>> table_;
};

struct JacobiViolation {
    int arity;
    std::vector<int> tuple;
    GradedElement residual;
};
struct JacobiReport {
    bool pass = true;
    std::vector<JacobiViolation> violations;
    std::vector<std::string> degree_violations;
};

// Evaluates sum_{i+j=n+1} (-1)^{i(j-1)} sum_{sigma in S(i,n-i)} chi(sigma)
// l_j(l_i(x_sigma(1..i)), x_sigma(i+1..n)) on every ascending basis tuple of
// size n <= max_arity, and audits the stored degree law first.
JacobiReport check_jacobi(const LInfinityAlgebra& L, int max_arity);

// Brackets of a minimal Sullivan algebra's dual: a generator of degree n
// becomes a basis element of degree n-1, and the structure constants of l_k
// are read off the word-length-k part of the differential. Convention
// (recorded here once): the symmetric bracket constant on an ascending
// generator tuple is the monomial coefficient of d_k times the product of
// factorials of repeated exponents, and l_k carries the extra sign
// (-1)^{sum_t (k-t)|x_t|} relating symmetric brackets on the suspension to
// antisymmetric ones. With these choices d^2 = 0 is equivalent to the
// generalized Jacobi identity used by check_jacobi.
LInfinityAlgebra ce_dual(const SullivanAlgebra& S,
                         std::optional<std::pair<int, int>> degree_window = std::nullopt);

// Inverse dictionary: a minimal L-infinity algebra of finite type yields a
// minimal Sullivan algebra whose differential is validated (d^2 = 0).
// Generator labels are sanitized to identifier characters so the rendered
// model reparses.
SullivanAlgebra ce_construct(const LInfinityAlgebra& L,
                             std::optional<std::pair<int, int>> degree_window = std::nullopt,
                             const std::string& name = "dual_model");

// L-infinity structure on pairs h(x)l with degree |l| - |h|:
//   l_1(h(x)l) = dh (x) l + (-1)^{|h|} h (x) l_1(l)
//   l_k(h_1(x)l_1, ..., h_k(x)l_k) = (-1)^{sum_{i<j}|l_i||h_j|} h_1...h_k (x) [l_1,...,l_k]
struct TensorModel {
    LInfinityAlgebra algebra;
    std::vector<std::pair<int, int>> pairs;  // algebra index -> (cdga index, L index)
    std::map<std::pair<int, int>, int> pair_index;

    static std::string pair_label(const std::string& h, const std::string& l) { return h + "@" + l; }
};
TensorModel tensor_model(const FiniteCdga& A, const LInfinityAlgebra& L);

struct NestedVanishingViolation {
    int inner_arity;
    int outer_arity;
    std::vector<int> inner_tuple;
    std::vector<int> outer_rest;
    GradedElement value;
};
struct NestedVanishingReport {
    bool pass = true;
    std::vector<NestedVanishingViolation> violations;
};

// Checks l_j(l_i(...), ...) = 0 on all ascending basis tuples with
// i + j - 1 <= max_arity, the computational content of the two-stage case.
NestedVanishingReport verify_two_stage_vanishing(const LInfinityAlgebra& L, int max_arity);

}  // namespace rhmap

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rhmap/graded.hpp"

namespace rhmap {

// Finite-dimensional connected CDGA over Q: nonnegative degrees, the degree-0
// slice is exactly the unit. Products are stored as structure constants on
// basis pairs of positive degree; products with the unit are implicit.
class FiniteCdga {
public:
    static FiniteCdga make(std::string name, GradedVectorSpace space,
                           std::map<std::pair<int, int>, GradedElement> products,
                           std::map<int, GradedElement> differential);
    static FiniteCdga make_unchecked(std::string name, GradedVectorSpace space,
                                     std::map<std::pair<int, int>, GradedElement> products,
                                     std::map<int, GradedElement> differential);

    const std::string& name() const { return name_; }
    const GradedVectorSpace& space() const { return space_; }
    int unit() const { return unit_; }

    GradedElement mul(int i, int j) const;
    GradedElement mul(const GradedElement& a, const GradedElement& b) const;
    GradedElement d(int i) const;
    GradedElement d(const GradedElement& a) const;
    bool has_zero_differential() const;

    // Missing mirror pairs are filled by graded commutativity at build time;
    // this audits commutativity, associativity, unit, degree additivity,
    // d^2 = 0 and Leibniz on the whole basis.
    void validate() const;

    // Length of the longest nonvanishing product chain of positive-degree
    // elements plus one: smallest N with (A^+)^N = 0.
    int nilpotency_length() const;

    const std::map<std::pair<int, int>, GradedElement>& product_table() const { return products_; }

private:
    std::string name_;
    GradedVectorSpace space_;
    int unit_ = -1;
    std::map<std::pair<int, int>, GradedElement> products_;
    std::vector<GradedElement> diff_;
};

// Deformation retract data of a complex onto its homology, built from the
// splitting A = B + d(B) + H in every degree: d maps B isomorphically onto
// d(B), K inverts d there and kills B + H. Works for either differential
// direction (degree +1 or -1).
struct ChainRetract {
    GradedVectorSpace homology;
    std::vector<GradedElement> include;   // homology index -> ambient element
    std::vector<GradedElement> project;   // ambient index -> homology element
    std::vector<GradedElement> homotopy;  // ambient index -> ambient element
    int diff_degree = 1;

    GradedElement apply_include(const GradedElement& h) const;
    GradedElement apply_project(const GradedElement& a) const;
    GradedElement apply_homotopy(const GradedElement& a) const;

    // qi = id, id - iq = dK + Kd, Ki = 0, qK = 0, KK = 0; exact, every basis
    // element, throws InvariantError otherwise.
    void validate(const GradedVectorSpace& ambient,
                  const std::function<GradedElement(const GradedElement&)>& d) const;
};

ChainRetract chain_retract(const GradedVectorSpace& space,
                           const std::function<GradedElement(int)>& diff, int diff_degree);

// The splitting above for a CDGA with its degree +1 differential.
ChainRetract harmonious_decomposition(const FiniteCdga& A);

// H(A) with zero differential and the induced product on the retract's chosen
// cocycle representatives.
FiniteCdga cohomology(const FiniteCdga& A);
FiniteCdga cohomology_from_retract(const FiniteCdga& A, const ChainRetract& r);

// Tensor product of connected CDGAs; labels join as "a*b" with unit parts dropped.
FiniteCdga cdga_tensor(const FiniteCdga& A, const FiniteCdga& B);

// Quotient by the dg ideal of elements in degrees above max_degree.
FiniteCdga cdga_truncate(const FiniteCdga& A, int max_degree);

// A quasi-isomorphic extension of a formal algebra H by Qb + Q(db) where one
// vanishing product of positive classes is redirected to db, making the chain
// homotopy act nontrivially on products of representatives. Falls back to the
// plain contractible extension when no product can be redirected validly.
FiniteCdga perturbed_extension(const FiniteCdga& H);

}  // namespace rhmap

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rhmap/linfty.hpp"
#include "rhmap/matrix.hpp"
#include "rhmap/transfer.hpp"

namespace rhmap {

// Model of map(X, Y) on pairs h(x)l for a formal source algebra H (d = 0) and
// a two-stage target Y: L is the dual of Y and the brackets follow the closed
// product-times-bracket formula. The full pair space is kept; reporting
// windows it, computations never do.
struct MappingSpaceModel {
    FiniteCdga H;
    SullivanAlgebra Y;
    LInfinityAlgebra L;
    TensorModel tm;

    const LInfinityAlgebra& algebra() const { return tm.algebra; }
    const GradedVectorSpace& space() const { return tm.algebra.space(); }
};

MappingSpaceModel mapping_space_model(const FiniteCdga& H, const SullivanAlgebra& Y);

// sum_{k>=2} 1/k! l_k(z, ..., z); z must be homogeneous of degree -1 (or zero).
GradedElement mc_residual(const MappingSpaceModel& m, const GradedElement& z);

struct MaurerCartanElement {
    GradedElement element;
    GradedElement residual;
    bool certified = false;
};
MaurerCartanElement make_mc(const MappingSpaceModel& m, GradedElement z);

// Residual of a general degree -1 coordinate vector as a polynomial system
// over Q in the coordinates of the slice.
struct McSystem {
    enum class Kind { IdenticallyZero, Linear, Nonlinear };
    struct Equation {
        int target;                                 // model basis index of the residual component
        std::map<std::vector<int>, Rational> poly;  // exponent vector over slice coordinates
    };
    std::vector<int> slice;  // model indices of the degree -1 basis
    std::vector<Equation> system;
    Kind kind = Kind::IdenticallyZero;
    // linear case only
    std::optional<std::vector<Rational>> particular;
    std::vector<std::vector<Rational>> kernel;
    // caller-supplied candidates with their certificates
    std::vector<std::pair<GradedElement, bool>> candidates;
};
McSystem solve_mc(const MappingSpaceModel& m,
                  const std::vector<GradedElement>& candidates = {});

struct ComponentModel {
    MaurerCartanElement mc;
    LInfinityAlgebra twisted;    // on the full pair space
    LInfinityAlgebra truncated;  // degrees >= 0, degree-0 part the l_1^z cycles
    std::vector<GradedElement> truncated_reps;  // truncated index -> pair-space element
};

// Twisted brackets l_k^z = sum_j 1/j! l_{k+j}(z,...,z,-) followed by the
// nonnegative truncation. Requires a certified element.
ComponentModel twist(const MappingSpaceModel& m, const MaurerCartanElement& z);

// degree n homology rank of the truncated twisted complex, keyed as n+1
// (nonzero entries only).
std::map<int, int> component_homotopy_ranks(const ComponentModel& c);

SullivanAlgebra component_minimal_model(const ComponentModel& c, int max_arity = 4);

// Degree-preserving multiplicative self-map of H given by basis images.
struct AlgebraMorphism {
    std::vector<GradedElement> images;

    GradedElement apply(const GradedElement& e) const;
    // unit fixed, degrees preserved, products respected, invertible
    void validate_automorphism(const FiniteCdga& H) const;
};

MaurerCartanElement apply_automorphism(const AlgebraMorphism& psi, const MappingSpaceModel& m,
                                       const MaurerCartanElement& z);

struct EquivalenceWitness {
    bool equivalent = false;
    std::map<int, RationalMatrix> matrices;  // per degree, truncated C -> truncated C'
    std::string detail;
};
// Checks that psi (x) id restricts to a bracket-compatible isomorphism of the
// truncated twisted algebras; requires C'.mc = (psi (x) id)(C.mc).
EquivalenceWitness verify_component_equivalence(const AlgebraMorphism& psi, const MappingSpaceModel& m,
                                                const ComponentModel& c, const ComponentModel& c_prime);

struct GroupLikeReport {
    bool grouplike = false;
    int max_arity = 0;
    struct Entry {
        int arity;
        std::vector<std::string> inputs;
        std::string value;
        std::vector<std::pair<std::string, std::string>> contributions;  // tree code -> value
    };
    std::vector<Entry> nonzero;             // transferred brackets that survive
    std::map<int, int> homology_ranks;      // of the component, keyed as n+1
};
GroupLikeReport is_grouplike(const ComponentModel& c, int max_arity = 4);

}  // namespace rhmap

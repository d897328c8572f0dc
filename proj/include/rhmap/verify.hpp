#pragma once

#include <string>

#include "rhmap/mapspace.hpp"

namespace rhmap {

struct TransferAgreement {
    bool trivial_agreement = false;    // transfer over the identity retract reproduces the model
    bool perturbed_agreement = false;  // transfer over a perturbed quasi-isomorphic algebra agrees
    bool multi_vertex_vanishing = false;
    std::string detail;
    bool pass() const { return trivial_agreement && perturbed_agreement && multi_vertex_vanishing; }
};

// Tree-sum transfer against the closed product-times-bracket formula, plus the
// vanishing of every tree with at least two internal vertices, up to the given
// arity.
TransferAgreement check_transfer_agreement(const MappingSpaceModel& m, int max_arity);

// Exact bracket-table equality up to max_arity (absent entries are zero).
bool tables_equal(const LInfinityAlgebra& a, const LInfinityAlgebra& b, int max_arity,
                  std::string* mismatch = nullptr);

}  // namespace rhmap

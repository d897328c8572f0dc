#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rhmap/rational.hpp"

namespace rhmap {

struct BasisItem {
    std::string label;
    int degree;
};

// Integer-graded finite-type vector space over Q with a labeled basis.
// Basis order is fixed as (degree, label) lexicographic so that every
// downstream matrix and golden test is reproducible.
class GradedVectorSpace {
public:
    GradedVectorSpace() = default;
    static GradedVectorSpace from_items(std::vector<BasisItem> items);

    int dim() const { return static_cast<int>(basis_.size()); }
    int degree(int i) const { return basis_.at(i).degree; }
    const std::string& label(int i) const { return basis_.at(i).label; }
    const std::vector<BasisItem>& basis() const { return basis_; }

    std::optional<int> find(const std::string& label) const;
    int index_of(const std::string& label) const;  // throws InputError if absent
    std::vector<int> slice(int degree) const;
    std::vector<int> degrees_present() const;
    int min_degree() const;
    int max_degree() const;

    // Same labels, all degrees shifted. Basis order is preserved.
    GradedVectorSpace suspend(int shift) const;

    bool operator==(const GradedVectorSpace& other) const { return basis_ == other.basis_; }

private:
    std::vector<BasisItem> basis_;
    std::map<std::string, int> index_;

    friend bool operator==(const BasisItem& a, const BasisItem& b);
};

inline bool operator==(const BasisItem& a, const BasisItem& b) {
    return a.label == b.label && a.degree == b.degree;
}

// Sparse vector over a GradedVectorSpace basis; indices refer to a space the
// caller keeps track of. Zero coefficients are never stored.
class GradedElement {
public:
    GradedElement() = default;
    static GradedElement basis(int index, Rational coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }
    Rational coeff(int index) const;

    void add_term(int index, const Rational& c);
    GradedElement& operator+=(const GradedElement& other);
    GradedElement& operator-=(const GradedElement& other);
    GradedElement& operator*=(const Rational& c);
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }
    bool operator==(const GradedElement& other) const { return terms_ == other.terms_; }

    // Degree if all terms share one, nullopt otherwise (and for zero).
    std::optional<int> homogeneous_degree(const GradedVectorSpace& space) const;

    std::string describe(const GradedVectorSpace& space) const;

private:
    std::vector<std::pair<int, Rational>> terms_;  // sorted by index
};

// Koszul sign of the permutation sending x_1 ... x_n to x_{perm[0]} ... x_{perm[n-1]}
// in the free graded-commutative algebra. perm holds 0-based images; degrees are
// those of the original symbols.
int koszul_sign(std::span<const int> perm, std::span<const int> degrees);

int permutation_sign(std::span<const int> perm);

// sgn(sigma) * koszul: the sign governing graded antisymmetry.
int antisymmetry_sign(std::span<const int> perm, std::span<const int> degrees);

// All (i, j)-shuffles as 0-based image sequences of length i+j: relative order
// inside the first i and the last j slots is preserved.
std::vector<std::vector<int>> shuffles(int i, int j);

// Sorts a basis-index tuple ascending, accumulating the antisymmetry sign for
// the given degrees. Returns sign 0 when the sorted tuple repeats an index of
// even degree (such brackets vanish identically).
struct CanonicalTuple {
    std::vector<int> indices;
    int sign;  // +1, -1, or 0
};
CanonicalTuple canonicalize_tuple(std::span<const int> tuple, const GradedVectorSpace& space);

}  // namespace rhmap

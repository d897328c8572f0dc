#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rhmap/graded.hpp"

namespace rhmap {

// Monomial in the free graded-commutative algebra on an ordered generator
// list: sorted (generator index, exponent) pairs, exponents >= 1. Generators
// of odd degree square to zero, so their exponent is always 1 here.
struct Monomial {
    std::vector<std::pair<int, int>> factors;

    int word_length() const {
        int n = 0;
        for (auto& [g, e] : factors) n += e;
        return n;
    }
    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
};

using Polynomial = std::map<Monomial, Rational>;

int monomial_degree(const Monomial& m, const GradedVectorSpace& gens);

// Product with the Koszul sign from interleaving odd generators; nullopt when
// an odd generator would appear twice.
std::optional<std::pair<Monomial, int>> monomial_mul(const Monomial& a, const Monomial& b,
                                                     const GradedVectorSpace& gens);

void poly_add(Polynomial& target, const Polynomial& p, const Rational& scale = 1);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b, const GradedVectorSpace& gens);
std::map<int, Polynomial> split_by_word_length(const Polynomial& p);

// Free commutative graded algebra Lambda(V) on positively graded generators,
// with a derivation differential stored generator by generator.
class SullivanAlgebra {
public:
    // Validates: positive generator degrees, homogeneous degree +1 right-hand
    // sides, and d(d(v)) = 0 for every generator (naming the offender).
    static SullivanAlgebra make(std::string name, GradedVectorSpace gens,
                                std::vector<Polynomial> differential);
    // Skips validation; for probing deliberately broken inputs.
    static SullivanAlgebra make_unchecked(std::string name, GradedVectorSpace gens,
                                          std::vector<Polynomial> differential);

    const std::string& name() const { return name_; }
    const GradedVectorSpace& generators() const { return gens_; }
    const Polynomial& d_of(int gen) const { return diff_.at(gen); }

    Polynomial d(const Polynomial& p) const;
    Polynomial d_monomial(const Monomial& m) const;

    void validate() const;

    // d = d_1 + d_2 + ... with d_k raising word length by k-1; returns the
    // nonzero d_k(gen), keyed by k.
    std::map<int, Polynomial> wordlength_parts(int gen) const;

    bool is_minimal() const;  // no linear part anywhere

    struct TwoStage {
        std::vector<int> closed;     // P: generators with zero differential
        std::vector<int> remaining;  // Q: the rest
    };
    // P/Q split; throws InputError naming the first generator whose
    // differential uses a non-closed generator.
    TwoStage two_stage_split() const;

    std::string render_poly(const Polynomial& p) const;

private:
    std::string name_;
    GradedVectorSpace gens_;
    std::vector<Polynomial> diff_;
};

}  // namespace rhmap

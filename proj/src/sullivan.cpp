#include "rhmap/sullivan.hpp"

#include <sstream>

#include "rhmap/error.hpp"

namespace rhmap {

int monomial_degree(const Monomial& m, const GradedVectorSpace& gens) {
    int d = 0;
    for (auto& [g, e] : m.factors) d += gens.degree(g) * e;
    return d;
}

std::optional<std::pair<Monomial, int>> monomial_mul(const Monomial& a, const Monomial& b,
                                                     const GradedVectorSpace& gens) {
    Monomial out;
    int sign = 1;
    std::size_t ia = 0, ib = 0;
    // odd-degree generators still to come from a; each odd factor of b taken
    // before they are exhausted jumps over all of them
    int odd_remaining_a = 0;
    for (auto& [g, e] : a.factors)
        if (gens.degree(g) & 1) ++odd_remaining_a;

    auto push = [&out](int g, int e) {
        if (!out.factors.empty() && out.factors.back().first == g)
            out.factors.back().second += e;
        else
            out.factors.emplace_back(g, e);
    };

    while (ia < a.factors.size() || ib < b.factors.size()) {
        bool take_a = ib == b.factors.size() ||
                      (ia < a.factors.size() && a.factors[ia].first <= b.factors[ib].first);
        if (take_a) {
            push(a.factors[ia].first, a.factors[ia].second);
            if (gens.degree(a.factors[ia].first) & 1) --odd_remaining_a;
            ++ia;
        } else {
            if ((gens.degree(b.factors[ib].first) & 1) && (odd_remaining_a & 1)) sign = -sign;
            push(b.factors[ib].first, b.factors[ib].second);
            ++ib;
        }
    }
    for (auto& [g, e] : out.factors)
        if (e > 1 && (gens.degree(g) & 1)) return std::nullopt;
    return std::make_pair(std::move(out), sign);
}

void poly_add(Polynomial& target, const Polynomial& p, const Rational& scale) {
    if (scale == 0) return;
    for (const auto& [m, c] : p) {
        auto it = target.find(m);
        if (it == target.end()) {
            target.emplace(m, c * scale);
        } else {
            it->second += c * scale;
            if (it->second == 0) target.erase(it);
        }
    }
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b, const GradedVectorSpace& gens) {
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto prod = monomial_mul(ma, mb, gens);
            if (!prod) continue;
            Rational c = ca * cb * prod->second;
            auto it = out.find(prod->first);
            if (it == out.end()) {
                if (c != 0) out.emplace(std::move(prod->first), std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

std::map<int, Polynomial> split_by_word_length(const Polynomial& p) {
    std::map<int, Polynomial> parts;
    for (const auto& [m, c] : p) parts[m.word_length()][m] = c;
    return parts;
}

SullivanAlgebra SullivanAlgebra::make(std::string name, GradedVectorSpace gens,
                                      std::vector<Polynomial> differential) {
    SullivanAlgebra s = make_unchecked(std::move(name), std::move(gens), std::move(differential));
    s.validate();
    return s;
}

SullivanAlgebra SullivanAlgebra::make_unchecked(std::string name, GradedVectorSpace gens,
                                                std::vector<Polynomial> differential) {
    SullivanAlgebra s;
    s.name_ = std::move(name);
    s.gens_ = std::move(gens);
    s.diff_ = std::move(differential);
    if (static_cast<int>(s.diff_.size()) != s.gens_.dim())
        throw InputError("sullivan algebra: differential table size mismatch");
    return s;
}

Polynomial SullivanAlgebra::d_monomial(const Monomial& m) const {
    Polynomial out;
    int prefix_degree = 0;
    for (std::size_t pos = 0; pos < m.factors.size(); ++pos) {
        auto [g, e] = m.factors[pos];
        // d hits each of the e copies; for even g the intervening copies are
        // even so each contributes identically
        Monomial prefix{{m.factors.begin(), m.factors.begin() + pos}};
        Monomial rest;
        if (e > 1) rest.factors.emplace_back(g, e - 1);
        rest.factors.insert(rest.factors.end(), m.factors.begin() + pos + 1, m.factors.end());

        Polynomial piece;
        poly_add(piece, d_of(g), Rational(e));
        Polynomial pref_poly{{prefix, 1}};
        Polynomial rest_poly{{rest, 1}};
        Polynomial term = poly_mul(poly_mul(pref_poly, piece, gens_), rest_poly, gens_);
        poly_add(out, term, (prefix_degree & 1) ? Rational(-1) : Rational(1));

        prefix_degree += gens_.degree(g) * e;
    }
    return out;
}

Polynomial SullivanAlgebra::d(const Polynomial& p) const {
    Polynomial out;
    for (const auto& [m, c] : p) poly_add(out, d_monomial(m), c);
    return out;
}

void SullivanAlgebra::validate() const {
    for (int g = 0; g < gens_.dim(); ++g) {
        if (gens_.degree(g) <= 0)
            throw InvariantError("sullivan generator " + gens_.label(g) + " has degree <= 0");
        for (const auto& [m, c] : diff_[g]) {
            if (monomial_degree(m, gens_) != gens_.degree(g) + 1)
                throw InvariantError("d(" + gens_.label(g) + ") is not homogeneous of degree +1");
        }
    }
    for (int g = 0; g < gens_.dim(); ++g) {
        if (!d(diff_[g]).empty())
            throw InvariantError("d^2 != 0 at generator " + gens_.label(g));
    }
}

std::map<int, Polynomial> SullivanAlgebra::wordlength_parts(int gen) const {
    return split_by_word_length(diff_.at(gen));
}

bool SullivanAlgebra::is_minimal() const {
    for (int g = 0; g < gens_.dim(); ++g)
        for (const auto& [m, c] : diff_[g])
            if (m.word_length() == 1) return false;
    return true;
}

SullivanAlgebra::TwoStage SullivanAlgebra::two_stage_split() const {
    TwoStage split;
    std::vector<bool> closed(gens_.dim(), false);
    for (int g = 0; g < gens_.dim(); ++g) {
        if (diff_[g].empty()) {
            closed[g] = true;
            split.closed.push_back(g);
        } else {
            split.remaining.push_back(g);
        }
    }
    for (int g : split.remaining)
        for (const auto& [m, c] : diff_[g])
            for (auto& [factor, e] : m.factors)
                if (!closed[factor])
                    throw InputError("not two-stage: d(" + gens_.label(g) + ") involves non-closed generator " +
                                     gens_.label(factor));
    return split;
}

std::string SullivanAlgebra::render_poly(const Polynomial& p) const {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p) {
        Rational a = c;
        if (a < 0) {
            os << (first ? "-" : " - ");
            a = -a;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        bool want_star = false;
        if (a != 1 || m.factors.empty()) {
            os << to_string(a);
            want_star = true;
        }
        for (auto& [g, e] : m.factors) {
            if (want_star) os << "*";
            want_star = true;
            os << gens_.label(g);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace rhmap

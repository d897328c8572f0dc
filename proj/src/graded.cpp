#include "rhmap/graded.hpp"

#include <sstream>

#include "rhmap/error.hpp"

namespace rhmap {

GradedVectorSpace GradedVectorSpace::from_items(std::vector<BasisItem> items) {
    std::sort(items.begin(), items.end(), [](const BasisItem& a, const BasisItem& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.label < b.label;
    });
    GradedVectorSpace s;
    s.basis_ = std::move(items);
    for (int i = 0; i < s.dim(); ++i) {
        auto [it, fresh] = s.index_.emplace(s.basis_[i].label, i);
        if (!fresh) throw InvariantError("duplicate basis label: " + s.basis_[i].label);
    }
    return s;
}

std::optional<int> GradedVectorSpace::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int GradedVectorSpace::index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw InputError("unknown basis label: " + label);
    return *i;
}

std::vector<int> GradedVectorSpace::slice(int degree) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].degree == degree) out.push_back(i);
    return out;
}

std::vector<int> GradedVectorSpace::degrees_present() const {
    std::vector<int> out;
    for (const auto& b : basis_)
        if (out.empty() || out.back() != b.degree) out.push_back(b.degree);
    return out;
}

int GradedVectorSpace::min_degree() const {
    if (basis_.empty()) return 0;
    return basis_.front().degree;
}

int GradedVectorSpace::max_degree() const {
    if (basis_.empty()) return 0;
    return basis_.back().degree;
}

GradedVectorSpace GradedVectorSpace::suspend(int shift) const {
    std::vector<BasisItem> items = basis_;
    for (auto& b : items) b.degree += shift;
    return from_items(std::move(items));
}

GradedElement GradedElement::basis(int index, Rational coeff) {
    GradedElement e;
    if (coeff != 0) e.terms_.emplace_back(index, std::move(coeff));
    return e;
}

Rational GradedElement::coeff(int index) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const auto& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == index) return it->second;
    return 0;
}

void GradedElement::add_term(int index, const Rational& c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const auto& t, int i) { return t.first < i; });
    if (it != terms_.end() && it->first == index) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {index, c});
    }
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
    for (const auto& [i, c] : other.terms_) add_term(i, c);
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) {
    for (const auto& [i, c] : other.terms_) add_term(i, -c);
    return *this;
}

GradedElement& GradedElement::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [i, v] : terms_) v *= c;
    return *this;
}

std::optional<int> GradedElement::homogeneous_degree(const GradedVectorSpace& space) const {
    if (terms_.empty()) return std::nullopt;
    int d = space.degree(terms_.front().first);
    for (const auto& [i, c] : terms_)
        if (space.degree(i) != d) return std::nullopt;
    return d;
}

std::string GradedElement::describe(const GradedVectorSpace& space) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        Rational a = c;
        if (a < 0) {
            os << (first ? "-" : " - ");
            a = -a;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        if (a != 1) os << to_string(a) << "*";
        os << space.label(i);
    }
    return os.str();
}

int koszul_sign(std::span<const int> perm, std::span<const int> degrees) {
    if (perm.size() != degrees.size()) throw InputError("koszul_sign: length mismatch");
    int sign = 1;
    for (std::size_t s = 0; s < perm.size(); ++s)
        for (std::size_t t = s + 1; t < perm.size(); ++t)
            if (perm[s] > perm[t] && (degrees[perm[s]] & 1) && (degrees[perm[t]] & 1)) sign = -sign;
    return sign;
}

int permutation_sign(std::span<const int> perm) {
    int sign = 1;
    for (std::size_t s = 0; s < perm.size(); ++s)
        for (std::size_t t = s + 1; t < perm.size(); ++t)
            if (perm[s] > perm[t]) sign = -sign;
    return sign;
}

int antisymmetry_sign(std::span<const int> perm, std::span<const int> degrees) {
    return permutation_sign(perm) * koszul_sign(perm, degrees);
}

std::vector<std::vector<int>> shuffles(int i, int j) {
    if (i < 0 || j < 0) throw InputError("shuffles: negative block size");
    int n = i + j;
    std::vector<std::vector<int>> out;
    // choose the positions going to the first block; both blocks stay ordered
    std::vector<int> first(i);
    for (int k = 0; k < i; ++k) first[k] = k;
    while (true) {
        std::vector<int> perm;
        perm.reserve(n);
        std::vector<bool> used(n, false);
        for (int k : first) {
            perm.push_back(k);
            used[k] = true;
        }
        for (int k = 0; k < n; ++k)
            if (!used[k]) perm.push_back(k);
        out.push_back(std::move(perm));
        // next combination
        int pos = i - 1;
        while (pos >= 0 && first[pos] == n - i + pos) --pos;
        if (pos < 0) break;
        ++first[pos];
        for (int k = pos + 1; k < i; ++k) first[k] = first[k - 1] + 1;
    }
    return out;
}

CanonicalTuple canonicalize_tuple(std::span<const int> tuple, const GradedVectorSpace& space) {
    CanonicalTuple out{std::vector<int>(tuple.begin(), tuple.end()), 1};
    auto& v = out.indices;
    // insertion sort; each adjacent swap of distinct symbols contributes the
    // antisymmetry sign -(-1)^{|a||b|}
    for (std::size_t s = 1; s < v.size(); ++s) {
        for (std::size_t t = s; t > 0 && v[t - 1] > v[t]; --t) {
            int sign = -1;
            if ((space.degree(v[t - 1]) & 1) && (space.degree(v[t]) & 1)) sign = 1;
            out.sign *= sign;
            std::swap(v[t - 1], v[t]);
        }
    }
    for (std::size_t s = 1; s < v.size(); ++s)
        if (v[s] == v[s - 1] && (space.degree(v[s]) & 1) == 0) {
            out.sign = 0;
            break;
        }
    return out;
}

}  // namespace rhmap

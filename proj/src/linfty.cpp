#include "rhmap/linfty.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "rhmap/error.hpp"

namespace rhmap {

namespace {

// ascending index tuples of the given length over [0, dim)
void for_each_ascending(int dim, int length, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> tuple(length, 0);
    std::function<void(int, int)> rec = [&](int pos, int min_index) {
        if (pos == length) {
            fn(tuple);
            return;
        }
        for (int i = min_index; i < dim; ++i) {
            tuple[pos] = i;
            rec(pos + 1, i);
        }
    };
    if (length == 0) {
        fn(tuple);
        return;
    }
    rec(0, 0);
}

bool has_even_repeat(const std::vector<int>& tuple, const GradedVectorSpace& space) {
    for (std::size_t t = 1; t < tuple.size(); ++t)
        if (tuple[t] == tuple[t - 1] && (space.degree(tuple[t]) & 1) == 0) return true;
    return false;
}

}  // namespace

void LInfinityAlgebra::set_bracket_unchecked(int arity, std::span<const int> tuple, GradedElement value) {
    if (static_cast<int>(tuple.size()) != arity) throw InputError("bracket tuple length != arity");
    CanonicalTuple canon = canonicalize_tuple(tuple, space_);
    if (canon.sign == 0) return;
    value *= Rational(canon.sign);
    if (value.is_zero()) {
        table_[arity].erase(canon.indices);
        return;
    }
    table_[arity][canon.indices] = std::move(value);
    set_arity_bound(arity);
}

void LInfinityAlgebra::set_bracket(int arity, std::span<const int> tuple, GradedElement value) {
    int expected = arity - 2;
    for (int i : tuple) expected += space_.degree(i);
    for (const auto& [out, c] : value.terms())
        if (space_.degree(out) != expected) {
            std::ostringstream os;
            os << "bracket degree law violated on (";
            for (std::size_t t = 0; t < tuple.size(); ++t)
                os << (t ? ", " : "") << space_.label(tuple[t]);
            os << "): output " << space_.label(out) << " has degree " << space_.degree(out)
               << ", expected " << expected;
            throw InvariantError(os.str());
        }
    set_bracket_unchecked(arity, tuple, std::move(value));
}

GradedElement LInfinityAlgebra::bracket_basis(int arity, std::span<const int> tuple) const {
    CanonicalTuple canon = canonicalize_tuple(tuple, space_);
    if (canon.sign == 0) return {};
    auto ait = table_.find(arity);
    if (ait == table_.end()) return {};
    auto it = ait->second.find(canon.indices);
    if (it == ait->second.end()) return {};
    GradedElement out = it->second;
    out *= Rational(canon.sign);
    return out;
}

GradedElement LInfinityAlgebra::bracket_or_zero(int arity, std::span<const GradedElement> args) const {
    if (static_cast<int>(args.size()) != arity) throw InputError("bracket: argument count != arity");
    auto ait = table_.find(arity);
    if (ait == table_.end() || ait->second.empty()) return {};
    GradedElement out;
    std::vector<int> tuple(arity);
    std::function<void(int, Rational)> expand = [&](int pos, Rational coeff) {
        if (pos == arity) {
            GradedElement v = bracket_basis(arity, tuple);
            v *= coeff;
            out += v;
            return;
        }
        for (const auto& [i, c] : args[pos].terms()) {
            tuple[pos] = i;
            expand(pos + 1, coeff * c);
        }
    };
    expand(0, 1);
    return out;
}

GradedElement LInfinityAlgebra::bracket(int arity, std::span<const GradedElement> args) const {
    if (arity < 1) throw InputError("bracket arity must be >= 1");
    if (arity > arity_bound_)
        throw InputError("bracket arity " + std::to_string(arity) + " beyond arity bound " +
                         std::to_string(arity_bound_));
    return bracket_or_zero(arity, args);
}

bool LInfinityAlgebra::minimal() const {
    auto it = table_.find(1);
    return it == table_.end() || it->second.empty();
}

std::vector<std::string> LInfinityAlgebra::table_degree_violations() const {
    std::vector<std::string> out;
    for (const auto& [arity, entries] : table_)
        for (const auto& [tuple, value] : entries) {
            int expected = arity - 2;
            for (int i : tuple) expected += space_.degree(i);
            for (const auto& [idx, c] : value.terms())
                if (space_.degree(idx) != expected) {
                    std::ostringstream os;
                    os << "arity " << arity << " entry (";
                    for (std::size_t t = 0; t < tuple.size(); ++t)
                        os << (t ? ", " : "") << space_.label(tuple[t]);
                    os << ") -> " << space_.label(idx) << " breaks the degree law";
                    out.push_back(os.str());
                }
        }
    return out;
}

JacobiReport check_jacobi(const LInfinityAlgebra& L, int max_arity) {
    JacobiReport report;
    report.degree_violations = L.table_degree_violations();
    if (!report.degree_violations.empty()) report.pass = false;

    const auto& space = L.space();
    for (int n = 1; n <= max_arity; ++n) {
        for_each_ascending(space.dim(), n, [&](const std::vector<int>& tuple) {
            if (has_even_repeat(tuple, space)) return;
            // every summand is a composite of two brackets: degree n - 3
            int out_degree = n - 3;
            for (int i : tuple) out_degree += space.degree(i);
            if (space.slice(out_degree).empty()) return;

            std::vector<int> degrees(n);
            for (int t = 0; t < n; ++t) degrees[t] = space.degree(tuple[t]);

            GradedElement residual;
            for (int i = 1; i <= n; ++i) {
                int j = n + 1 - i;
                if (i > L.arity_bound() || j > L.arity_bound()) continue;
                int outer_sign = ((i * (j - 1)) & 1) ? -1 : 1;
                for (const auto& sh : shuffles(i, n - i)) {
                    int chi = antisymmetry_sign(sh, degrees);
                    std::vector<int> inner_tuple(i);
                    for (int t = 0; t < i; ++t) inner_tuple[t] = tuple[sh[t]];
                    GradedElement inner = L.bracket_basis(i, inner_tuple);
                    if (inner.is_zero()) continue;
                    std::vector<GradedElement> outer_args;
                    outer_args.push_back(std::move(inner));
                    for (int t = i; t < n; ++t) outer_args.push_back(GradedElement::basis(tuple[sh[t]]));
                    GradedElement term = L.bracket_or_zero(j, outer_args);
                    term *= Rational(outer_sign * chi);
                    residual += term;
                }
            }
            if (!residual.is_zero()) {
                report.pass = false;
                report.violations.push_back({n, tuple, std::move(residual)});
            }
        });
    }
    return report;
}

LInfinityAlgebra ce_dual(const SullivanAlgebra& S, std::optional<std::pair<int, int>> degree_window) {
    if (!S.is_minimal())
        throw InputError("ce_dual requires a minimal Sullivan algebra; reduce via homotopy transfer first");
    const auto& V = S.generators();

    auto in_window = [&](int ldeg) {
        return !degree_window || (ldeg >= degree_window->first && ldeg <= degree_window->second);
    };

    std::vector<BasisItem> items;
    for (int g = 0; g < V.dim(); ++g)
        if (in_window(V.degree(g) - 1)) items.push_back({V.label(g), V.degree(g) - 1});
    LInfinityAlgebra L{GradedVectorSpace::from_items(std::move(items))};
    const auto& ls = L.space();

    std::map<int, std::map<std::vector<int>, GradedElement>> staging;
    for (int a = 0; a < V.dim(); ++a) {
        if (!in_window(V.degree(a) - 1)) continue;
        int target = ls.index_of(V.label(a));
        for (const auto& [k, part] : S.wordlength_parts(a)) {
            for (const auto& [mono, coeff] : part) {
                std::vector<int> tuple;
                Integer mult_factor = 1;
                bool dropped = false;
                for (auto& [g, e] : mono.factors) {
                    if (!in_window(V.degree(g) - 1)) {
                        dropped = true;
                        break;
                    }
                    for (int c = 1; c <= e; ++c) {
                        tuple.push_back(ls.index_of(V.label(g)));
                        mult_factor *= c;
                    }
                }
                if (dropped) continue;
                // tuple is ascending: generator order is degree-monotone
                int sign_exp = 0;
                for (int t = 0; t < k; ++t) sign_exp += (k - 1 - t) * ls.degree(tuple[t]);
                Rational c = coeff * Rational(mult_factor);
                if (sign_exp & 1) c = -c;
                staging[k][tuple].add_term(target, c);
            }
        }
    }
    for (auto& [k, entries] : staging)
        for (auto& [tuple, value] : entries) L.set_bracket(k, tuple, std::move(value));
    L.set_arity_bound(2);
    return L;
}

SullivanAlgebra ce_construct(const LInfinityAlgebra& L, std::optional<std::pair<int, int>> degree_window,
                             const std::string& name) {
    if (!L.minimal()) throw InputError("ce_construct requires a minimal L-infinity algebra");
    const auto& ls = L.space();

    auto in_window = [&](int ldeg) {
        return !degree_window || (ldeg >= degree_window->first && ldeg <= degree_window->second);
    };
    auto sanitize = [&](std::string s) {
        for (char& c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
        if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) s = "g" + s;
        return s;
    };
    auto gen_label = [&](int i) { return ls.label(i) == "1" ? std::string("one") : sanitize(ls.label(i)); };

    std::vector<BasisItem> items;
    for (int i = 0; i < ls.dim(); ++i)
        if (in_window(ls.degree(i))) items.push_back({gen_label(i), ls.degree(i) + 1});
    GradedVectorSpace gens = GradedVectorSpace::from_items(std::move(items));

    std::vector<Polynomial> differential(gens.dim());
    for (const auto& [k, entries] : L.table()) {
        if (k < 2) continue;
        for (const auto& [tuple, value] : entries) {
            bool dropped = false;
            for (int i : tuple)
                if (!in_window(ls.degree(i))) dropped = true;
            if (dropped) continue;

            int sign_exp = 0;
            for (int t = 0; t < k; ++t) sign_exp += (k - 1 - t) * ls.degree(tuple[t]);

            // fold the tuple's generators into a canonical monomial; the fold
            // tracks the reordering sign in case sanitized labels sort
            // differently than the bracket basis
            Monomial mono;
            int fold_sign = 1;
            Integer mult_factor = 1;
            int run = 1;
            bool vanished = false;
            for (int t = 0; t < k && !vanished; ++t) {
                run = (t > 0 && tuple[t] == tuple[t - 1]) ? run + 1 : 1;
                mult_factor *= run;
                Monomial factor{{{gens.index_of(gen_label(tuple[t])), 1}}};
                auto prod = monomial_mul(mono, factor, gens);
                if (!prod) {
                    vanished = true;
                    break;
                }
                mono = std::move(prod->first);
                fold_sign *= prod->second;
            }
            if (vanished) continue;
            for (const auto& [target, c] : value.terms()) {
                if (!in_window(ls.degree(target))) continue;
                Rational coeff = c * fold_sign / Rational(mult_factor);
                if (sign_exp & 1) coeff = -coeff;
                Polynomial p{{mono, coeff}};
                poly_add(differential[gens.index_of(gen_label(target))], p);
            }
        }
    }
    return SullivanAlgebra::make(name, std::move(gens), std::move(differential));
}

TensorModel tensor_model(const FiniteCdga& A, const LInfinityAlgebra& L) {
    const auto& as = A.space();
    const auto& ls = L.space();

    std::vector<BasisItem> items;
    for (int h = 0; h < as.dim(); ++h)
        for (int l = 0; l < ls.dim(); ++l)
            items.push_back({TensorModel::pair_label(as.label(h), ls.label(l)), ls.degree(l) - as.degree(h)});

    TensorModel tm;
    tm.algebra = LInfinityAlgebra{GradedVectorSpace::from_items(std::move(items))};
    const auto& space = tm.algebra.space();
    tm.pairs.assign(space.dim(), {});
    for (int h = 0; h < as.dim(); ++h)
        for (int l = 0; l < ls.dim(); ++l) {
            int idx = space.index_of(TensorModel::pair_label(as.label(h), ls.label(l)));
            tm.pairs[idx] = {h, l};
            tm.pair_index[{h, l}] = idx;
        }

    auto embed = [&](const GradedElement& ea, const GradedElement& el) {
        GradedElement out;
        for (const auto& [h, ch] : ea.terms())
            for (const auto& [l, cl] : el.terms()) out.add_term(tm.pair_index.at({h, l}), ch * cl);
        return out;
    };

    // l_1 = d (x) id + (-1)^{|h|} id (x) l_1
    for (int x = 0; x < space.dim(); ++x) {
        auto [h, l] = tm.pairs[x];
        GradedElement val = embed(A.d(h), GradedElement::basis(l));
        GradedElement basis_l = GradedElement::basis(l);
        GradedElement l1 = L.bracket_or_zero(1, std::span<const GradedElement>(&basis_l, 1));
        if (!l1.is_zero()) {
            GradedElement t = embed(GradedElement::basis(h), l1);
            t *= Rational((as.degree(h) & 1) ? -1 : 1);
            val += t;
        }
        if (!val.is_zero()) {
            std::vector<int> tuple{x};
            tm.algebra.set_bracket(1, tuple, std::move(val));
        }
    }

    // higher brackets from the closed formula over each stored entry of L
    for (const auto& [k, entries] : L.table()) {
        if (k < 2) continue;
        std::map<std::vector<int>, GradedElement> staging;
        for (const auto& [ltuple, lvalue] : entries) {
            std::vector<int> hs(k, 0);
            std::function<void(int)> assign = [&](int pos) {
                if (pos == k) {
                    // skip repeated pairs of even total degree
                    for (int t = 1; t < k; ++t)
                        if (ltuple[t] == ltuple[t - 1] && hs[t] == hs[t - 1] &&
                            ((ls.degree(ltuple[t]) - as.degree(hs[t])) & 1) == 0)
                            return;
                    GradedElement prod = GradedElement::basis(hs[0]);
                    for (int t = 1; t < k && !prod.is_zero(); ++t)
                        prod = A.mul(prod, GradedElement::basis(hs[t]));
                    if (prod.is_zero()) return;
                    int sign_exp = 0;
                    for (int t = 0; t < k; ++t)
                        for (int u = t + 1; u < k; ++u) sign_exp += ls.degree(ltuple[t]) * as.degree(hs[u]);
                    GradedElement out = embed(prod, lvalue);
                    out *= Rational((sign_exp & 1) ? -1 : 1);
                    if (out.is_zero()) return;

                    std::vector<int> tuple(k);
                    for (int t = 0; t < k; ++t) tuple[t] = tm.pair_index.at({hs[t], ltuple[t]});
                    CanonicalTuple canon = canonicalize_tuple(tuple, space);
                    if (canon.sign == 0) return;
                    out *= Rational(canon.sign);
                    staging[canon.indices] += out;
                    return;
                }
                int lo = (pos > 0 && ltuple[pos] == ltuple[pos - 1]) ? hs[pos - 1] : 0;
                for (int h = lo; h < as.dim(); ++h) {
                    hs[pos] = h;
                    assign(pos + 1);
                }
            };
            assign(0);
        }
        for (auto& [tuple, value] : staging)
            if (!value.is_zero()) tm.algebra.set_bracket(k, tuple, std::move(value));
    }

    tm.algebra.set_arity_bound(std::max(L.arity_bound(), A.nilpotency_length() + L.arity_bound() - 1));
    return tm;
}

NestedVanishingReport verify_two_stage_vanishing(const LInfinityAlgebra& L, int max_arity) {
    NestedVanishingReport report;
    const auto& space = L.space();
    for (int i = 1; i <= max_arity; ++i) {
        if (i > L.arity_bound()) continue;
        for (int j = 1; i + j - 1 <= max_arity; ++j) {
            if (j > L.arity_bound()) continue;
            for_each_ascending(space.dim(), i, [&](const std::vector<int>& inner_tuple) {
                if (has_even_repeat(inner_tuple, space)) return;
                GradedElement inner = L.bracket_basis(i, inner_tuple);
                if (inner.is_zero()) return;
                for_each_ascending(space.dim(), j - 1, [&](const std::vector<int>& rest) {
                    std::vector<GradedElement> args;
                    args.push_back(inner);
                    for (int r : rest) args.push_back(GradedElement::basis(r));
                    GradedElement value = L.bracket_or_zero(j, args);
                    if (!value.is_zero()) {
                        report.pass = false;
                        report.violations.push_back({i, j, inner_tuple, rest, std::move(value)});
                    }
                });
            });
        }
    }
    return report;
}

}  // namespace rhmap

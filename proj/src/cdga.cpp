#include "rhmap/cdga.hpp"

#include <algorithm>

#include "rhmap/error.hpp"
#include "rhmap/matrix.hpp"

namespace rhmap {

FiniteCdga FiniteCdga::make_unchecked(std::string name, GradedVectorSpace space,
                                      std::map<std::pair<int, int>, GradedElement> products,
                                      std::map<int, GradedElement> differential) {
    FiniteCdga a;
    a.name_ = std::move(name);
    a.space_ = std::move(space);
    a.products_ = std::move(products);
    a.diff_.assign(a.space_.dim(), GradedElement{});
    for (auto& [i, e] : differential) a.diff_.at(i) = std::move(e);

    auto zero_slice = a.space_.slice(0);
    if (zero_slice.size() != 1)
        throw InvariantError("cdga " + a.name_ + ": degree 0 slice must be exactly the unit");
    a.unit_ = zero_slice.front();

    // fill missing mirror products by graded commutativity
    std::map<std::pair<int, int>, GradedElement> filled = a.products_;
    for (const auto& [key, val] : a.products_) {
        auto mirror = std::make_pair(key.second, key.first);
        if (filled.count(mirror)) continue;
        int s = ((a.space_.degree(key.first) & 1) && (a.space_.degree(key.second) & 1)) ? -1 : 1;
        GradedElement v = val;
        v *= Rational(s);
        filled.emplace(mirror, std::move(v));
    }
    a.products_ = std::move(filled);
    return a;
}

FiniteCdga FiniteCdga::make(std::string name, GradedVectorSpace space,
                            std::map<std::pair<int, int>, GradedElement> products,
                            std::map<int, GradedElement> differential) {
    FiniteCdga a = make_unchecked(std::move(name), std::move(space), std::move(products),
                                  std::move(differential));
    a.validate();
    return a;
}

GradedElement FiniteCdga::mul(int i, int j) const {
    if (i == unit_) return GradedElement::basis(j);
    if (j == unit_) return GradedElement::basis(i);
    auto it = products_.find({i, j});
    if (it != products_.end()) return it->second;
    return {};
}

GradedElement FiniteCdga::mul(const GradedElement& a, const GradedElement& b) const {
    GradedElement out;
    for (const auto& [i, ci] : a.terms())
        for (const auto& [j, cj] : b.terms()) {
            GradedElement p = mul(i, j);
            p *= ci * cj;
            out += p;
        }
    return out;
}

GradedElement FiniteCdga::d(int i) const { return diff_.at(i); }

GradedElement FiniteCdga::d(const GradedElement& a) const {
    GradedElement out;
    for (const auto& [i, c] : a.terms()) {
        GradedElement t = diff_.at(i);
        t *= c;
        out += t;
    }
    return out;
}

bool FiniteCdga::has_zero_differential() const {
    for (const auto& e : diff_)
        if (!e.is_zero()) return false;
    return true;
}

void FiniteCdga::validate() const {
    const int n = space_.dim();
    for (int i = 0; i < n; ++i)
        if (space_.degree(i) < 0) throw InvariantError("cdga " + name_ + ": negative degree basis element");

    if (!d(unit_).is_zero()) throw InvariantError("cdga " + name_ + ": d(1) != 0");

    for (int i = 0; i < n; ++i) {
        if (diff_[i].is_zero()) continue;
        auto deg = diff_[i].homogeneous_degree(space_);
        if (!deg || *deg != space_.degree(i) + 1)
            throw InvariantError("cdga " + name_ + ": d(" + space_.label(i) + ") not of degree +1");
        if (!d(diff_[i]).is_zero())
            throw InvariantError("cdga " + name_ + ": d^2 != 0 at " + space_.label(i));
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GradedElement ij = mul(i, j);
            if (!ij.is_zero()) {
                auto deg = ij.homogeneous_degree(space_);
                if (!deg || *deg != space_.degree(i) + space_.degree(j))
                    throw InvariantError("cdga " + name_ + ": product " + space_.label(i) + "*" +
                                         space_.label(j) + " has wrong degree");
            }
            int s = ((space_.degree(i) & 1) && (space_.degree(j) & 1)) ? -1 : 1;
            GradedElement ji = mul(j, i);
            ji *= Rational(s);
            if (!(ij == ji))
                throw InvariantError("cdga " + name_ + ": graded commutativity fails at (" +
                                     space_.label(i) + ", " + space_.label(j) + ")");
            // Leibniz
            GradedElement lhs = d(ij);
            GradedElement rhs = mul(d(i), GradedElement::basis(j));
            GradedElement t = mul(GradedElement::basis(i), d(j));
            t *= Rational((space_.degree(i) & 1) ? -1 : 1);
            rhs += t;
            if (!(lhs == rhs))
                throw InvariantError("cdga " + name_ + ": Leibniz fails at (" + space_.label(i) + ", " +
                                     space_.label(j) + ")");
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                GradedElement lhs = mul(mul(i, j), GradedElement::basis(k));
                GradedElement rhs = mul(GradedElement::basis(i), mul(j, k));
                if (!(lhs == rhs))
                    throw InvariantError("cdga " + name_ + ": associativity fails at (" + space_.label(i) +
                                         ", " + space_.label(j) + ", " + space_.label(k) + ")");
            }
}

int FiniteCdga::nilpotency_length() const {
    // span of (A+)^k per step, reduced to at most dim vectors
    auto reduce_span = [&](std::vector<GradedElement> vecs) {
        std::vector<std::vector<Rational>> rows;
        std::vector<GradedElement> kept;
        for (auto& e : vecs) {
            std::vector<Rational> v(space_.dim());
            for (const auto& [i, c] : e.terms()) v[i] = c;
            for (auto& r : rows) {
                std::size_t lead = 0;
                while (lead < r.size() && r[lead] == 0) ++lead;
                if (lead < r.size() && v[lead] != 0) {
                    Rational f = v[lead] / r[lead];
                    for (std::size_t k = lead; k < v.size(); ++k) v[k] -= f * r[k];
                }
            }
            if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) {
                rows.push_back(std::move(v));
                kept.push_back(std::move(e));
            }
        }
        return kept;
    };

    std::vector<GradedElement> layer;
    for (int i = 0; i < space_.dim(); ++i)
        if (space_.degree(i) > 0) layer.push_back(GradedElement::basis(i));
    layer = reduce_span(std::move(layer));
    int length = 1;
    while (!layer.empty() && length < space_.dim() + 2) {
        std::vector<GradedElement> next;
        for (const auto& e : layer)
            for (int i = 0; i < space_.dim(); ++i) {
                if (space_.degree(i) <= 0) continue;
                GradedElement p = mul(e, GradedElement::basis(i));
                if (!p.is_zero()) next.push_back(std::move(p));
            }
        next = reduce_span(std::move(next));
        if (next.empty()) break;
        layer = std::move(next);
        ++length;
    }
    return length + 1;  // smallest N with (A+)^N = 0
}

GradedElement ChainRetract::apply_include(const GradedElement& h) const {
    GradedElement out;
    for (const auto& [i, c] : h.terms()) {
        GradedElement t = include.at(i);
        t *= c;
        out += t;
    }
    return out;
}

GradedElement ChainRetract::apply_project(const GradedElement& a) const {
    GradedElement out;
    for (const auto& [i, c] : a.terms()) {
        GradedElement t = project.at(i);
        t *= c;
        out += t;
    }
    return out;
}

GradedElement ChainRetract::apply_homotopy(const GradedElement& a) const {
    GradedElement out;
    for (const auto& [i, c] : a.terms()) {
        GradedElement t = homotopy.at(i);
        t *= c;
        out += t;
    }
    return out;
}

void ChainRetract::validate(const GradedVectorSpace& ambient,
                            const std::function<GradedElement(const GradedElement&)>& d) const {
    for (int h = 0; h < homology.dim(); ++h) {
        if (!(apply_project(include.at(h)) == GradedElement::basis(h)))
            throw InvariantError("retract: qi != id at " + homology.label(h));
        if (!apply_homotopy(include.at(h)).is_zero())
            throw InvariantError("retract: Ki != 0 at " + homology.label(h));
    }
    for (int a = 0; a < ambient.dim(); ++a) {
        GradedElement e = GradedElement::basis(a);
        GradedElement lhs = e - apply_include(apply_project(e));
        GradedElement rhs = d(apply_homotopy(e)) + apply_homotopy(d(e));
        if (!(lhs == rhs))
            throw InvariantError("retract: chain homotopy identity fails at " + ambient.label(a));
        if (!apply_project(apply_homotopy(e)).is_zero())
            throw InvariantError("retract: qK != 0 at " + ambient.label(a));
        if (!apply_homotopy(apply_homotopy(e)).is_zero())
            throw InvariantError("retract: KK != 0 at " + ambient.label(a));
    }
}

ChainRetract chain_retract(const GradedVectorSpace& space,
                           const std::function<GradedElement(int)>& diff, int diff_degree) {
    if (diff_degree != 1 && diff_degree != -1) throw InputError("chain_retract: differential degree must be +-1");
    ChainRetract r;
    r.diff_degree = diff_degree;

    struct DegreeData {
        std::vector<int> slice;                         // ambient indices
        std::vector<std::vector<Rational>> kernel;      // coordinates in slice
        std::vector<int> b_elements;                    // ambient indices spanning B
        std::vector<std::vector<Rational>> h_reps;      // coordinates in slice
        std::vector<int> h_anchor;                      // ambient index giving the label
    };
    std::map<int, DegreeData> data;

    auto coords = [&](const GradedElement& e, const std::vector<int>& slice) {
        std::vector<Rational> v(slice.size());
        for (std::size_t k = 0; k < slice.size(); ++k) v[k] = e.coeff(slice[k]);
        return v;
    };

    // incremental rank tracking via row reduction
    struct RankTracker {
        std::vector<std::vector<Rational>> rows;  // in echelon form
        bool add(std::vector<Rational> v) {
            for (auto& r : rows) {
                std::size_t lead = 0;
                while (lead < r.size() && r[lead] == 0) ++lead;
                if (lead < r.size() && v[lead] != 0) {
                    Rational f = v[lead] / r[lead];
                    for (std::size_t k = lead; k < v.size(); ++k) v[k] -= f * r[k];
                }
            }
            bool nonzero = std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
            if (nonzero) rows.push_back(std::move(v));
            return nonzero;
        }
    };

    for (int deg : space.degrees_present()) {
        DegreeData& dd = data[deg];
        dd.slice = space.slice(deg);
    }

    for (auto& [deg, dd] : data) {
        // kernel of d restricted to this degree
        auto target_slice = space.slice(deg + diff_degree);
        RationalMatrix m(target_slice.size(), dd.slice.size());
        for (std::size_t j = 0; j < dd.slice.size(); ++j) {
            GradedElement img = diff(dd.slice[j]);
            for (std::size_t i = 0; i < target_slice.size(); ++i) m.at(i, j) = img.coeff(target_slice[i]);
        }
        dd.kernel = kernel_basis(m);

        // B: complement of the kernel spanned by actual basis elements, greedy
        // in basis order
        RankTracker tracker;
        for (auto& v : dd.kernel) tracker.add(v);
        for (std::size_t j = 0; j < dd.slice.size(); ++j) {
            std::vector<Rational> e(dd.slice.size());
            e[j] = 1;
            if (tracker.add(std::move(e))) dd.b_elements.push_back(dd.slice[j]);
        }
    }

    for (auto& [deg, dd] : data) {
        // homology representatives: extend the image of d to the kernel,
        // greedily over the deterministic kernel basis
        RankTracker tracker;
        auto src = data.find(deg - diff_degree);
        if (src != data.end()) {
            for (int b : src->second.b_elements) tracker.add(coords(diff(b), dd.slice));
        }
        for (std::size_t k = 0; k < dd.kernel.size(); ++k) {
            auto v = dd.kernel[k];
            if (tracker.add(v)) {
                dd.h_reps.push_back(dd.kernel[k]);
                // anchor: first slice position where this kernel vector is 1
                // and all previously chosen vectors vanish; the free column of
                // the rref parametrization works
                int anchor = -1;
                for (std::size_t p = 0; p < v.size(); ++p)
                    if (dd.kernel[k][p] == 1) {
                        bool clean = true;
                        for (std::size_t k2 = 0; k2 < dd.kernel.size(); ++k2)
                            if (k2 != k && dd.kernel[k2][p] != 0) clean = false;
                        if (clean) {
                            anchor = dd.slice[p];
                            break;
                        }
                    }
                if (anchor < 0) anchor = dd.slice[0];
                dd.h_anchor.push_back(anchor);
            }
        }
    }

    // assemble the homology space
    std::vector<BasisItem> items;
    std::vector<std::pair<std::string, GradedElement>> reps;
    for (auto& [deg, dd] : data)
        for (std::size_t k = 0; k < dd.h_reps.size(); ++k) {
            std::string label = space.label(dd.h_anchor[k]);
            items.push_back({label, deg});
            GradedElement rep;
            for (std::size_t p = 0; p < dd.slice.size(); ++p) rep.add_term(dd.slice[p], dd.h_reps[k][p]);
            reps.emplace_back(label, std::move(rep));
        }
    r.homology = GradedVectorSpace::from_items(items);
    r.include.assign(r.homology.dim(), {});
    for (auto& [label, rep] : reps) r.include[r.homology.index_of(label)] = rep;

    // project and homotopy: solve against the decomposition basis per degree
    r.project.assign(space.dim(), {});
    r.homotopy.assign(space.dim(), {});
    for (auto& [deg, dd] : data) {
        if (dd.slice.empty()) continue;
        std::vector<std::pair<char, int>> columns;  // ('b', pos) / ('d', src index) / ('h', H index)
        std::vector<GradedElement> column_elems;
        for (int b : dd.b_elements) {
            columns.push_back({'b', b});
            column_elems.push_back(GradedElement::basis(b));
        }
        auto src = data.find(deg - diff_degree);
        if (src != data.end())
            for (int b : src->second.b_elements) {
                columns.push_back({'d', b});
                column_elems.push_back(diff(b));
            }
        for (int h = 0; h < r.homology.dim(); ++h)
            if (r.homology.degree(h) == deg) {
                columns.push_back({'h', h});
                column_elems.push_back(r.include[h]);
            }
        if (columns.size() != dd.slice.size())
            throw InvariantError("chain_retract: decomposition does not span degree " + std::to_string(deg));
        RationalMatrix m(dd.slice.size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto v = coords(column_elems[c], dd.slice);
            for (std::size_t i = 0; i < dd.slice.size(); ++i) m.at(i, c) = v[i];
        }
        for (std::size_t p = 0; p < dd.slice.size(); ++p) {
            std::vector<Rational> rhs(dd.slice.size());
            rhs[p] = 1;
            auto sol = solve(m, rhs);
            if (!sol) throw InvariantError("chain_retract: decomposition solve failed");
            GradedElement proj, hom;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if ((*sol)[c] == 0) continue;
                if (columns[c].first == 'h') proj.add_term(columns[c].second, (*sol)[c]);
                if (columns[c].first == 'd') hom.add_term(columns[c].second, (*sol)[c]);
            }
            r.project[dd.slice[p]] = std::move(proj);
            r.homotopy[dd.slice[p]] = std::move(hom);
        }
    }
    return r;
}

ChainRetract harmonious_decomposition(const FiniteCdga& A) {
    ChainRetract r = chain_retract(A.space(), [&](int i) { return A.d(i); }, +1);
    r.validate(A.space(), [&](const GradedElement& e) { return A.d(e); });
    return r;
}

FiniteCdga cohomology_from_retract(const FiniteCdga& A, const ChainRetract& r) {
    std::map<std::pair<int, int>, GradedElement> products;
    for (int i = 0; i < r.homology.dim(); ++i)
        for (int j = 0; j < r.homology.dim(); ++j) {
            if (r.homology.degree(i) == 0 || r.homology.degree(j) == 0) continue;
            GradedElement p = r.apply_project(A.mul(r.include[i], r.include[j]));
            if (!p.is_zero()) products[{i, j}] = std::move(p);
        }
    return FiniteCdga::make("H(" + A.name() + ")", r.homology, std::move(products), {});
}

FiniteCdga cohomology(const FiniteCdga& A) {
    return cohomology_from_retract(A, harmonious_decomposition(A));
}

FiniteCdga cdga_tensor(const FiniteCdga& A, const FiniteCdga& B) {
    const auto& sa = A.space();
    const auto& sb = B.space();
    auto pair_label = [&](int i, int j) {
        if (i == A.unit() && j == B.unit()) return std::string("1");
        if (j == B.unit()) return sa.label(i);
        if (i == A.unit()) return sb.label(j);
        return sa.label(i) + "*" + sb.label(j);
    };
    std::vector<BasisItem> items;
    for (int i = 0; i < sa.dim(); ++i)
        for (int j = 0; j < sb.dim(); ++j)
            items.push_back({pair_label(i, j), sa.degree(i) + sb.degree(j)});
    GradedVectorSpace space = GradedVectorSpace::from_items(items);

    auto embed = [&](const GradedElement& ea, const GradedElement& eb) {
        GradedElement out;
        for (const auto& [i, ci] : ea.terms())
            for (const auto& [j, cj] : eb.terms()) out.add_term(space.index_of(pair_label(i, j)), ci * cj);
        return out;
    };

    std::map<std::pair<int, int>, GradedElement> products;
    std::map<int, GradedElement> differential;
    std::vector<std::pair<int, int>> unpack(space.dim());
    for (int i = 0; i < sa.dim(); ++i)
        for (int j = 0; j < sb.dim(); ++j) unpack[space.index_of(pair_label(i, j))] = {i, j};

    for (int x = 0; x < space.dim(); ++x) {
        auto [i, j] = unpack[x];
        // d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db
        GradedElement dx = embed(A.d(i), GradedElement::basis(j));
        GradedElement t = embed(GradedElement::basis(i), B.d(j));
        t *= Rational((sa.degree(i) & 1) ? -1 : 1);
        dx += t;
        if (!dx.is_zero()) differential[x] = std::move(dx);

        if (space.degree(x) == 0) continue;
        for (int y = 0; y < space.dim(); ++y) {
            if (space.degree(y) == 0) continue;
            auto [k, l] = unpack[y];
            // (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'
            GradedElement p = embed(A.mul(i, k), B.mul(j, l));
            p *= Rational(((sb.degree(j) & 1) && (sa.degree(k) & 1)) ? -1 : 1);
            if (!p.is_zero()) products[{x, y}] = std::move(p);
        }
    }
    return FiniteCdga::make(A.name() + "(x)" + B.name(), std::move(space), std::move(products),
                            std::move(differential));
}

FiniteCdga cdga_truncate(const FiniteCdga& A, int max_degree) {
    const auto& s = A.space();
    std::vector<BasisItem> items;
    for (int i = 0; i < s.dim(); ++i)
        if (s.degree(i) <= max_degree) items.push_back({s.label(i), s.degree(i)});
    GradedVectorSpace space = GradedVectorSpace::from_items(items);

    auto carry = [&](const GradedElement& e) {
        GradedElement out;
        for (const auto& [i, c] : e.terms())
            if (s.degree(i) <= max_degree) out.add_term(space.index_of(s.label(i)), c);
        return out;
    };

    std::map<std::pair<int, int>, GradedElement> products;
    std::map<int, GradedElement> differential;
    for (int x = 0; x < space.dim(); ++x) {
        int old_x = s.index_of(space.label(x));
        GradedElement dx = carry(A.d(old_x));
        if (!dx.is_zero()) differential[x] = std::move(dx);
        if (space.degree(x) == 0) continue;
        for (int y = 0; y < space.dim(); ++y) {
            if (space.degree(y) == 0) continue;
            GradedElement p = carry(A.mul(old_x, s.index_of(space.label(y))));
            if (!p.is_zero()) products[{x, y}] = std::move(p);
        }
    }
    return FiniteCdga::make(A.name() + "|<=" + std::to_string(max_degree), std::move(space),
                            std::move(products), std::move(differential));
}

FiniteCdga perturbed_extension(const FiniteCdga& H) {
    const auto& s = H.space();

    auto attempt = [&](int i, int j) -> std::optional<FiniteCdga> {
        try {
            int bdeg = (i >= 0) ? s.degree(i) + s.degree(j) - 1 : 2;
            std::vector<BasisItem> items = s.basis();
            items.push_back({"aux_b", bdeg});
            items.push_back({"aux_c", bdeg + 1});
            GradedVectorSpace space = GradedVectorSpace::from_items(items);

            auto carry = [&](const GradedElement& e) {
                GradedElement out;
                for (const auto& [k, c] : e.terms()) out.add_term(space.index_of(s.label(k)), c);
                return out;
            };
            std::map<std::pair<int, int>, GradedElement> products;
            for (int x = 0; x < s.dim(); ++x)
                for (int y = 0; y < s.dim(); ++y) {
                    if (s.degree(x) == 0 || s.degree(y) == 0) continue;
                    GradedElement p = carry(H.mul(x, y));
                    if (!p.is_zero())
                        products[{space.index_of(s.label(x)), space.index_of(s.label(y))}] = std::move(p);
                }
            if (i >= 0) {
                GradedElement c = GradedElement::basis(space.index_of("aux_c"));
                products[{space.index_of(s.label(i)), space.index_of(s.label(j))}] = c;
            }
            std::map<int, GradedElement> differential;
            differential[space.index_of("aux_b")] = GradedElement::basis(space.index_of("aux_c"));
            return FiniteCdga::make(H.name() + "+contractible", std::move(space), std::move(products),
                                    std::move(differential));
        } catch (const InvariantError&) {
            return std::nullopt;
        }
    };

    if (!H.has_zero_differential()) throw InputError("perturbed_extension expects a formal algebra (d = 0)");
    for (int i = 0; i < s.dim(); ++i) {
        if (s.degree(i) == 0) continue;
        for (int j = i; j < s.dim(); ++j) {
            if (s.degree(j) == 0 || !H.mul(i, j).is_zero()) continue;
            if (auto a = attempt(i, j)) return *a;
        }
    }
    auto fallback = attempt(-1, -1);
    if (!fallback) throw InvariantError("perturbed_extension: contractible extension failed to validate");
    return *fallback;
}

}  // namespace rhmap

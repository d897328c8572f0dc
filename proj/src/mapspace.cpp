#include "rhmap/mapspace.hpp"

#include <algorithm>
#include <functional>

#include "rhmap/error.hpp"

namespace rhmap {

MappingSpaceModel mapping_space_model(const FiniteCdga& H, const SullivanAlgebra& Y) {
    if (!H.has_zero_differential())
        throw InputError("mapping space model requires a source algebra with zero differential");
    Y.two_stage_split();  // throws when Y is not two-stage
    MappingSpaceModel m;
    m.H = H;
    m.Y = Y;
    m.L = ce_dual(Y);
    m.tm = tensor_model(m.H, m.L);
    return m;
}

GradedElement mc_residual(const MappingSpaceModel& m, const GradedElement& z) {
    if (!z.is_zero()) {
        auto deg = z.homogeneous_degree(m.space());
        if (!deg || *deg != -1)
            throw InputError("Maurer-Cartan candidates must be homogeneous of degree -1");
    }
    GradedElement out;
    for (int k = 2; k <= m.algebra().arity_bound(); ++k) {
        std::vector<GradedElement> args(k, z);
        GradedElement term = m.algebra().bracket_or_zero(k, args);
        term *= inverse_factorial(k);
        out += term;
    }
    return out;
}

MaurerCartanElement make_mc(const MappingSpaceModel& m, GradedElement z) {
    MaurerCartanElement mc;
    mc.residual = mc_residual(m, z);
    mc.element = std::move(z);
    mc.certified = mc.residual.is_zero();
    return mc;
}

McSystem solve_mc(const MappingSpaceModel& m, const std::vector<GradedElement>& candidates) {
    McSystem sys;
    const auto& space = m.space();
    sys.slice = space.slice(-1);
    const int nvar = static_cast<int>(sys.slice.size());

    std::map<int, std::map<std::vector<int>, Rational>> per_target;
    // l_k is symmetric on odd arguments, so the residual of z = sum t_i u_i
    // collects over ascending tuples with weight 1/prod(mult!)
    for (int k = 2; k <= m.algebra().arity_bound(); ++k) {
        std::vector<int> positions(k, 0);
        std::function<void(int, int)> rec = [&](int pos, int lo) {
            if (pos == k) {
                std::vector<GradedElement> args;
                args.reserve(k);
                for (int s : positions) args.push_back(GradedElement::basis(sys.slice[s]));
                GradedElement v = m.algebra().bracket_or_zero(k, args);
                if (v.is_zero()) return;
                Integer weight = 1;
                int run = 1;
                for (int t = 1; t < k; ++t) {
                    run = (positions[t] == positions[t - 1]) ? run + 1 : 1;
                    weight *= run;
                }
                Rational coeff(1, weight);
                std::vector<int> exps(nvar, 0);
                for (int s : positions) ++exps[s];
                for (const auto& [target, c] : v.terms()) {
                    auto& poly = per_target[target];
                    auto it = poly.find(exps);
                    if (it == poly.end())
                        poly.emplace(exps, c * coeff);
                    else {
                        it->second += c * coeff;
                        if (it->second == 0) poly.erase(it);
                    }
                }
                return;
            }
            for (int s = lo; s < nvar; ++s) {
                positions[pos] = s;
                rec(pos + 1, s);
            }
        };
        if (nvar > 0) rec(0, 0);
    }

    for (auto& [target, poly] : per_target)
        if (!poly.empty()) sys.system.push_back({target, std::move(poly)});

    int max_deg = 0;
    for (const auto& eq : sys.system)
        for (const auto& [exps, c] : eq.poly) {
            int d = 0;
            for (int e : exps) d += e;
            max_deg = std::max(max_deg, d);
        }
    if (sys.system.empty())
        sys.kind = McSystem::Kind::IdenticallyZero;
    else if (max_deg <= 1) {
        sys.kind = McSystem::Kind::Linear;
        RationalMatrix a(sys.system.size(), nvar);
        std::vector<Rational> rhs(sys.system.size());
        for (std::size_t r = 0; r < sys.system.size(); ++r)
            for (const auto& [exps, c] : sys.system[r].poly) {
                int d = 0, var = -1;
                for (int v = 0; v < nvar; ++v)
                    if (exps[v]) {
                        d += exps[v];
                        var = v;
                    }
                if (d == 0)
                    rhs[r] = -c;
                else
                    a.at(r, var) = c;
            }
        sys.particular = solve(a, rhs);
        sys.kernel = kernel_basis(a);
    } else {
        sys.kind = McSystem::Kind::Nonlinear;
    }

    for (const auto& z : candidates) sys.candidates.emplace_back(z, mc_residual(m, z).is_zero());
    return sys;
}

ComponentModel twist(const MappingSpaceModel& m, const MaurerCartanElement& z) {
    if (!z.certified) throw InputError("twist requires a certified Maurer-Cartan element");
    const auto& model = m.algebra();
    const auto& space = model.space();
    const int bound = model.arity_bound();

    ComponentModel c;
    c.mc = z;
    c.twisted = LInfinityAlgebra{space};
    c.twisted.set_arity_bound(bound);

    for (int k = 1; k <= bound; ++k) {
        std::vector<int> tuple(k, 0);
        std::function<void(int, int)> rec = [&](int pos, int lo) {
            if (pos == k) {
                for (int t = 1; t < k; ++t)
                    if (tuple[t] == tuple[t - 1] && (space.degree(tuple[t]) & 1) == 0) return;
                GradedElement val;
                for (int j = 0; k + j <= bound; ++j) {
                    std::vector<GradedElement> args(j, z.element);
                    for (int i : tuple) args.push_back(GradedElement::basis(i));
                    GradedElement term = model.bracket_or_zero(k + j, args);
                    term *= inverse_factorial(j);
                    val += term;
                }
                if (!val.is_zero()) c.twisted.set_bracket(k, tuple, std::move(val));
                return;
            }
            for (int i = lo; i < space.dim(); ++i) {
                tuple[pos] = i;
                rec(pos + 1, i);
            }
        };
        rec(0, 0);
    }

    auto twisted_l1 = [&](const GradedElement& e) {
        return c.twisted.bracket_or_zero(1, std::span<const GradedElement>(&e, 1));
    };
    for (int i = 0; i < space.dim(); ++i) {
        GradedElement sq = twisted_l1(twisted_l1(GradedElement::basis(i)));
        if (!sq.is_zero())
            throw InvariantError("twisted differential does not square to zero at " + space.label(i));
    }

    // truncation: everything in degree >= 1 plus the degree-0 cycles
    std::vector<BasisItem> items;
    std::vector<std::pair<std::string, GradedElement>> reps;
    for (int i = 0; i < space.dim(); ++i)
        if (space.degree(i) >= 1) {
            items.push_back({space.label(i), space.degree(i)});
            reps.emplace_back(space.label(i), GradedElement::basis(i));
        }
    auto zero_slice = space.slice(0);
    if (!zero_slice.empty()) {
        auto minus1 = space.slice(-1);
        RationalMatrix d0(minus1.size(), zero_slice.size());
        for (std::size_t j = 0; j < zero_slice.size(); ++j) {
            GradedElement img = twisted_l1(GradedElement::basis(zero_slice[j]));
            for (std::size_t i = 0; i < minus1.size(); ++i) d0.at(i, j) = img.coeff(minus1[i]);
        }
        auto kernel = kernel_basis(d0);
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            GradedElement rep;
            int anchor = -1;
            for (std::size_t p = 0; p < zero_slice.size(); ++p) {
                rep.add_term(zero_slice[p], kernel[k][p]);
                if (anchor >= 0 || kernel[k][p] != 1) continue;
                bool clean = true;  // the free column of this kernel vector
                for (std::size_t k2 = 0; k2 < kernel.size(); ++k2)
                    if (k2 != k && kernel[k2][p] != 0) clean = false;
                if (clean) anchor = static_cast<int>(p);
            }
            std::string label = space.label(zero_slice[anchor < 0 ? 0 : anchor]);
            items.push_back({label, 0});
            reps.emplace_back(label, std::move(rep));
        }
    }
    GradedVectorSpace tspace = GradedVectorSpace::from_items(items);
    c.truncated = LInfinityAlgebra{tspace};
    c.truncated.set_arity_bound(bound);
    c.truncated_reps.assign(tspace.dim(), {});
    for (auto& [label, rep] : reps) c.truncated_reps[tspace.index_of(label)] = rep;

    // express a pair-space element supported in degrees >= 0 in truncated coordinates
    auto to_truncated = [&](const GradedElement& e) {
        GradedElement out;
        GradedElement deg0_part;
        for (const auto& [i, coeff] : e.terms()) {
            if (space.degree(i) >= 1)
                out.add_term(tspace.index_of(space.label(i)), coeff);
            else if (space.degree(i) == 0)
                deg0_part.add_term(i, coeff);
            else
                throw InvariantError("truncated bracket leaks below degree 0");
        }
        if (!deg0_part.is_zero()) {
            auto t0 = tspace.slice(0);
            RationalMatrix mtx(zero_slice.size(), t0.size());
            for (std::size_t col = 0; col < t0.size(); ++col)
                for (std::size_t row = 0; row < zero_slice.size(); ++row)
                    mtx.at(row, col) = c.truncated_reps[t0[col]].coeff(zero_slice[row]);
            std::vector<Rational> rhs(zero_slice.size());
            for (std::size_t row = 0; row < zero_slice.size(); ++row)
                rhs[row] = deg0_part.coeff(zero_slice[row]);
            auto sol = solve(mtx, rhs);
            if (!sol) throw InvariantError("degree-0 bracket output is not a cycle");
            for (std::size_t col = 0; col < t0.size(); ++col) out.add_term(t0[col], (*sol)[col]);
        }
        return out;
    };

    for (int k = 1; k <= bound; ++k) {
        std::vector<int> tuple(k, 0);
        std::function<void(int, int)> rec = [&](int pos, int lo) {
            if (pos == k) {
                for (int t = 1; t < k; ++t)
                    if (tuple[t] == tuple[t - 1] && (tspace.degree(tuple[t]) & 1) == 0) return;
                std::vector<GradedElement> args;
                args.reserve(k);
                for (int i : tuple) args.push_back(c.truncated_reps[i]);
                GradedElement val = c.twisted.bracket_or_zero(k, args);
                if (val.is_zero()) return;
                c.truncated.set_bracket(k, tuple, to_truncated(val));
                return;
            }
            for (int i = lo; i < tspace.dim(); ++i) {
                tuple[pos] = i;
                rec(pos + 1, i);
            }
        };
        rec(0, 0);
    }
    return c;
}

std::map<int, int> component_homotopy_ranks(const ComponentModel& c) {
    const auto& space = c.truncated.space();
    auto l1 = [&](const GradedElement& e) {
        return c.truncated.bracket_or_zero(1, std::span<const GradedElement>(&e, 1));
    };
    auto rank_at = [&](int deg) {  // rank of l_1: deg -> deg-1
        auto src = space.slice(deg);
        auto dst = space.slice(deg - 1);
        if (src.empty() || dst.empty()) return std::size_t{0};
        RationalMatrix mtx(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            GradedElement img = l1(GradedElement::basis(src[j]));
            for (std::size_t i = 0; i < dst.size(); ++i) mtx.at(i, j) = img.coeff(dst[i]);
        }
        return rref(mtx).rank;
    };

    std::map<int, int> ranks;
    for (int deg : space.degrees_present()) {
        std::size_t dim = space.slice(deg).size();
        std::size_t rank_out = rank_at(deg);
        std::size_t rank_in = rank_at(deg + 1);
        int h = static_cast<int>(dim - rank_out - rank_in);
        if (h != 0) ranks[deg + 1] = h;
    }
    return ranks;
}

SullivanAlgebra component_minimal_model(const ComponentModel& c, int max_arity) {
    TransferProblem p = retract_of_chain(c.truncated);
    LInfinityAlgebra minimal = transfer(p, max_arity);
    return ce_construct(minimal, std::nullopt, "component_model");
}

GradedElement AlgebraMorphism::apply(const GradedElement& e) const {
    GradedElement out;
    for (const auto& [i, c] : e.terms()) {
        GradedElement t = images.at(i);
        t *= c;
        out += t;
    }
    return out;
}

void AlgebraMorphism::validate_automorphism(const FiniteCdga& H) const {
    const auto& s = H.space();
    if (static_cast<int>(images.size()) != s.dim())
        throw InputError("morphism image table size mismatch");
    if (!(images[H.unit()] == GradedElement::basis(H.unit())))
        throw InputError("morphism does not preserve the unit");
    for (int i = 0; i < s.dim(); ++i) {
        if (images[i].is_zero()) continue;
        auto deg = images[i].homogeneous_degree(s);
        if (!deg || *deg != s.degree(i))
            throw InputError("morphism does not preserve degree at " + s.label(i));
    }
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < s.dim(); ++j) {
            GradedElement lhs = apply(H.mul(i, j));
            GradedElement rhs = H.mul(images[i], images[j]);
            if (!(lhs == rhs))
                throw InputError("morphism fails product commutation at (" + s.label(i) + ", " +
                                 s.label(j) + ")");
        }
    for (int deg : s.degrees_present()) {
        auto slice = s.slice(deg);
        RationalMatrix mtx(slice.size(), slice.size());
        for (std::size_t j = 0; j < slice.size(); ++j)
            for (std::size_t i = 0; i < slice.size(); ++i)
                mtx.at(i, j) = images[slice[j]].coeff(slice[i]);
        if (rref(mtx).rank != slice.size())
            throw InputError("morphism is not invertible in degree " + std::to_string(deg));
    }
}

MaurerCartanElement apply_automorphism(const AlgebraMorphism& psi, const MappingSpaceModel& m,
                                       const MaurerCartanElement& z) {
    psi.validate_automorphism(m.H);
    GradedElement image;
    for (const auto& [idx, coeff] : z.element.terms()) {
        auto [h, l] = m.tm.pairs[idx];
        for (const auto& [h2, c2] : psi.images[h].terms())
            image.add_term(m.tm.pair_index.at({h2, l}), coeff * c2);
    }
    MaurerCartanElement out = make_mc(m, std::move(image));
    if (!out.certified)
        throw InvariantError("automorphism image of a certified element failed certification");
    return out;
}

EquivalenceWitness verify_component_equivalence(const AlgebraMorphism& psi, const MappingSpaceModel& m,
                                                const ComponentModel& c, const ComponentModel& c_prime) {
    MaurerCartanElement mapped = apply_automorphism(psi, m, c.mc);
    if (!(mapped.element == c_prime.mc.element))
        throw InputError("component equivalence requires mc' = (psi (x) id)(mc)");

    const auto& space = m.space();
    auto phi_pair = [&](const GradedElement& e) {
        GradedElement out;
        for (const auto& [idx, coeff] : e.terms()) {
            auto [h, l] = m.tm.pairs[idx];
            for (const auto& [h2, c2] : psi.images[h].terms())
                out.add_term(m.tm.pair_index.at({h2, l}), coeff * c2);
        }
        return out;
    };

    const auto& ts = c.truncated.space();
    const auto& ts2 = c_prime.truncated.space();
    EquivalenceWitness w;

    // express images of C's representatives in C''s coordinates, degree by degree
    std::vector<GradedElement> phi_trunc(ts.dim());
    for (int deg : ts.degrees_present()) {
        auto src = ts.slice(deg);
        auto dst = ts2.slice(deg);
        if (src.size() != dst.size()) {
            w.detail = "truncated spaces differ in degree " + std::to_string(deg);
            return w;
        }
        auto ambient_slice_rows = [&]() {
            std::vector<int> rows;
            for (int i = 0; i < space.dim(); ++i)
                if (space.degree(i) == deg) rows.push_back(i);
            return rows;
        }();
        RationalMatrix basis_mtx(ambient_slice_rows.size(), dst.size());
        for (std::size_t j = 0; j < dst.size(); ++j)
            for (std::size_t i = 0; i < ambient_slice_rows.size(); ++i)
                basis_mtx.at(i, j) = c_prime.truncated_reps[dst[j]].coeff(ambient_slice_rows[i]);
        RationalMatrix phi_mtx(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            GradedElement img = phi_pair(c.truncated_reps[src[j]]);
            std::vector<Rational> rhs(ambient_slice_rows.size());
            for (std::size_t i = 0; i < ambient_slice_rows.size(); ++i)
                rhs[i] = img.coeff(ambient_slice_rows[i]);
            auto sol = solve(basis_mtx, rhs);
            if (!sol) {
                w.detail = "image of " + ts.label(src[j]) + " leaves the truncated algebra";
                return w;
            }
            GradedElement mapped_elem;
            for (std::size_t i = 0; i < dst.size(); ++i) {
                phi_mtx.at(i, j) = (*sol)[i];
                mapped_elem.add_term(dst[i], (*sol)[i]);
            }
            phi_trunc[src[j]] = std::move(mapped_elem);
        }
        if (rref(phi_mtx).rank != src.size()) {
            w.detail = "mapped basis is not invertible in degree " + std::to_string(deg);
            return w;
        }
        w.matrices[deg] = std::move(phi_mtx);
    }

    auto phi_elem = [&](const GradedElement& e) {
        GradedElement out;
        for (const auto& [i, coeff] : e.terms()) {
            GradedElement t = phi_trunc[i];
            t *= coeff;
            out += t;
        }
        return out;
    };

    // phi is a linear isomorphism, so commutation on every ascending basis
    // tuple of C covers both tables
    int bound = std::max(c.truncated.arity_bound(), c_prime.truncated.arity_bound());
    for (int arity = 1; arity <= bound; ++arity) {
        std::vector<int> tuple(arity, 0);
        std::function<bool(int, int)> rec = [&](int pos, int lo) -> bool {
            if (pos == arity) {
                GradedElement lhs = phi_elem(c.truncated.bracket_or_zero(
                    arity,
                    [&] {
                        std::vector<GradedElement> args;
                        for (int i : tuple) args.push_back(GradedElement::basis(i));
                        return args;
                    }()));
                std::vector<GradedElement> mapped_args;
                for (int i : tuple) mapped_args.push_back(phi_trunc[i]);
                GradedElement rhs = c_prime.truncated.bracket_or_zero(arity, mapped_args);
                if (!(lhs == rhs)) {
                    w.detail = "bracket commutation fails at arity " + std::to_string(arity);
                    return false;
                }
                return true;
            }
            for (int i = lo; i < ts.dim(); ++i) {
                tuple[pos] = i;
                if (!rec(pos + 1, i)) return false;
            }
            return true;
        };
        if (!rec(0, 0)) return w;
    }
    w.equivalent = true;
    return w;
}

GroupLikeReport is_grouplike(const ComponentModel& c, int max_arity) {
    GroupLikeReport report;
    report.max_arity = max_arity;
    report.homology_ranks = component_homotopy_ranks(c);

    TransferProblem p = retract_of_chain(c.truncated);
    LInfinityAlgebra minimal = transfer(p, max_arity);
    report.grouplike = true;
    for (const auto& [arity, entries] : minimal.table()) {
        if (arity < 2) continue;
        for (const auto& [tuple, value] : entries) {
            if (value.is_zero()) continue;
            report.grouplike = false;
            GroupLikeReport::Entry entry;
            entry.arity = arity;
            for (int i : tuple) entry.inputs.push_back(p.target.label(i));
            entry.value = value.describe(p.target);
            for (auto& [tree, contrib] : transfer_contributions(p, arity, tuple))
                entry.contributions.emplace_back(tree, contrib.describe(p.target));
            report.nonzero.push_back(std::move(entry));
        }
    }
    return report;
}

}  // namespace rhmap

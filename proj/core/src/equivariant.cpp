#include "mcfix/equivariant.hpp"

#include <algorithm>
#include <functional>

namespace mcfix {

EquivarianceReport check_equivariance(const GSLAlgebra& gl) {
    const SLAlgebra& L = gl.algebra;
    const GroupRep& rep = gl.action;
    EquivarianceReport out;

    for (const auto& [t, v] : L.table()) {
        int od = L.bracket_output_degree(t);
        for (int g = 0; g < rep.group().order(); ++g) {
            const QMatrix* gout = rep.matrix(g).block(od);
            if (!gout) throw StructuralError("action matrix missing at degree " + std::to_string(od));
            QVec lhs = gout->apply(v);
            std::vector<GradedVec> moved;
            moved.reserve(t.size());
            for (const auto& b : t) {
                const QMatrix* gb = rep.matrix(g).block(b.degree);
                if (!gb) throw StructuralError("action matrix missing at degree " + std::to_string(b.degree));
                moved.push_back({b.degree, gb->column(b.index)});
            }
            GradedVec rhs = L.eval(moved);
            if (!(lhs == rhs.coords)) {
                out.ok = false;
                out.witness = "element " + rep.group().element_name(g) + " on tuple " +
                              format_tuple(L.carrier(), t);
                return out;
            }
        }
    }

    // G · F^p ⊆ F^p: the image of a weight-w basis vector stays in the
    // span of weight >= w elements of its degree.
    for (int n : L.carrier().degrees()) {
        for (int i = 0; i < L.carrier().dim(n); ++i) {
            int w = L.weight({n, i});
            if (w <= 1) continue;
            SpanBuilder deep(L.carrier().dim(n));
            for (int j = 0; j < L.carrier().dim(n); ++j)
                if (L.weight({n, j}) >= w) {
                    QVec e(L.carrier().dim(n));
                    e[j] = 1;
                    deep.insert(std::move(e));
                }
            for (int g = 0; g < rep.group().order(); ++g) {
                const QMatrix* gb = rep.matrix(g).block(n);
                if (!gb) throw StructuralError("action matrix missing at degree " + std::to_string(n));
                if (!deep.contains(gb->column(i))) {
                    out.ok = false;
                    out.witness = "element " + rep.group().element_name(g) + " moves " +
                                  L.carrier().label(n, i) + " out of filtration stage " + std::to_string(w);
                    return out;
                }
            }
        }
    }
    return out;
}

SLAlgebra fixed_subalgebra(const GSLAlgebra& gl) {
    const SLAlgebra& L = gl.algebra;
    const GroupRep& rep = gl.action;

    // Filtration-adapted invariant basis per degree: vectors entering at the
    // deepest stage F^p first, so inherited weights satisfy
    // F^p(L^G) = F^p L ∩ L^G.
    struct NewElt {
        int weight;
        QVec vec;  // in ambient coordinates of its degree
    };
    std::map<int, std::vector<NewElt>> chosen;
    int wmax = L.max_weight();
    for (int n : L.carrier().degrees()) {
        int dim = L.carrier().dim(n);
        SpanBuilder have(dim);
        std::vector<NewElt> acc;
        for (int p = wmax; p >= 1; --p) {
            std::vector<QVec> stage;
            for (int j = 0; j < dim; ++j)
                if (L.weight({n, j}) >= p) {
                    QVec e(dim);
                    e[j] = 1;
                    stage.push_back(std::move(e));
                }
            if (stage.empty()) continue;
            for (QVec& v : rep.invariants_within(n, stage))
                if (have.insert(v)) acc.push_back({p, std::move(v)});
        }
        std::stable_sort(acc.begin(), acc.end(), [](const NewElt& a, const NewElt& b) { return a.weight < b.weight; });
        if (!acc.empty()) chosen[n] = std::move(acc);
    }

    GradedModule carrier;
    for (const auto& [n, elts] : chosen)
        for (const auto& e : elts) carrier.add(n, format_combination(L.carrier(), n, e.vec));

    SLAlgebra out(carrier, L.convention(), L.arity_cap(), L.degree_cap());
    if (L.truncated_below()) out.set_truncated_below(*L.truncated_below());
    for (const auto& [n, elts] : chosen)
        for (int i = 0; i < int(elts.size()); ++i) out.set_weight({n, i}, elts[i].weight);

    // restrict each stored arity to tuples of invariant basis vectors
    std::vector<int> arities = L.arities();
    for (int k : arities) {
        // enumerate canonical k-tuples over the new basis
        std::vector<BasisRef> all;
        for (const auto& [n, elts] : chosen)
            for (int i = 0; i < int(elts.size()); ++i) all.push_back({n, i});
        std::vector<int> comb(k, 0);
        std::function<void(size_t, size_t)> rec = [&](size_t depth, size_t start) {
            if (depth == size_t(k)) {
                Tuple t;
                std::vector<GradedVec> args;
                for (int c : comb) {
                    t.push_back(all[c]);
                    args.push_back({all[c].degree, chosen[all[c].degree][all[c].index].vec});
                }
                GradedVec val = L.eval(args);
                if (is_zero(val.coords)) return;
                auto it = chosen.find(val.degree);
                if (it == chosen.end())
                    throw StructuralError("bracket of invariants leaves the invariant span at degree " +
                                          std::to_string(val.degree));
                std::vector<QVec> cols;
                for (const auto& e : it->second) cols.push_back(e.vec);
                auto coords = solve_linear(QMatrix::from_columns(cols, L.carrier().dim(val.degree)), val.coords);
                if (!coords)
                    throw StructuralError("bracket of invariants leaves the invariant span at degree " +
                                          std::to_string(val.degree));
                out.add_bracket(t, std::move(*coords));
                return;
            }
            for (size_t i = start; i < all.size(); ++i) {
                comb[depth] = int(i);
                rec(depth + 1, i);
            }
        };
        if (!all.empty()) rec(0, 0);
    }
    return out;
}

}  // namespace mcfix

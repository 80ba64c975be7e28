#include "mcfix/mc.hpp"

#include <algorithm>
#include <functional>

namespace mcfix {

bool PiReport::trivial() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.dim == 0; });
}

int PiReport::dim_at(int degree) const {
    for (const auto& e : entries)
        if (e.degree == degree) return e.dim;
    return 0;
}

GradedVec curvature(const SLAlgebra& l, const GradedVec& z) {
    if (z.degree != 0) throw SchemaError("Maurer-Cartan elements live in degree 0");
    if (int(z.coords.size()) != l.carrier().dim(0))
        throw SchemaError("curvature argument has the wrong dimension");
    GradedVec acc{-1, QVec(l.carrier().dim(-1))};
    for (int k : l.arities()) {
        std::vector<GradedVec> args(k, z);
        GradedVec term = l.eval(args);
        axpy(acc.coords, inv_factorial(k), term.coords);
    }
    return acc;
}

bool is_maurer_cartan(const SLAlgebra& l, const GradedVec& z) {
    return is_zero(curvature(l, z).coords);
}

SLAlgebra twist(const SLAlgebra& l, const GradedVec& tau) {
    if (!is_maurer_cartan(l, tau))
        throw StructuralError("twist refused: the element does not satisfy the Maurer-Cartan equation");

    GradedModule kept;
    bool dropped = false;
    for (int n : l.carrier().degrees()) {
        if (n <= 0) {
            dropped = true;
            continue;
        }
        for (const auto& label : l.carrier().labels(n)) kept.add(n, label);
    }
    SLAlgebra out(kept, Convention::Shifted, l.arity_cap(), l.degree_cap());
    if (dropped) out.set_truncated_below(1);
    else if (l.truncated_below()) out.set_truncated_below(*l.truncated_below());
    for (int n : out.carrier().degrees())
        for (int i = 0; i < out.carrier().dim(n); ++i) out.set_weight({n, i}, l.weight({n, i}));

    std::vector<int> arities = l.arities();
    int top_arity = arities.empty() ? 0 : arities.back();
    bool tau_zero = is_zero(tau.coords);

    std::vector<BasisRef> all;
    for (int n : out.carrier().degrees())
        for (int i = 0; i < out.carrier().dim(n); ++i) all.push_back({n, i});

    for (int k = 1; k <= l.arity_cap() && k <= top_arity; ++k) {
        std::vector<int> comb;
        std::function<void(int)> rec = [&](int start) {
            if (int(comb.size()) == k) {
                Tuple t;
                std::vector<GradedVec> base_args;
                for (int c : comb) {
                    t.push_back(all[c]);
                    base_args.push_back(basis_vector(l.carrier(), all[c].degree, all[c].index));
                }
                int od = out.bracket_output_degree(t);
                QVec value(out.carrier().dim(od));
                for (int j = 0; k + j <= top_arity; ++j) {
                    if (j > 0 && tau_zero) break;
                    std::vector<GradedVec> args(j, tau);
                    args.insert(args.end(), base_args.begin(), base_args.end());
                    GradedVec term = l.eval(args);
                    if (od >= 1 && !is_zero(term.coords)) axpy(value, inv_factorial(j), term.coords);
                }
                if (!is_zero(value)) out.add_bracket(t, std::move(value));
                return;
            }
            for (int i = start; i < int(all.size()); ++i) {
                comb.push_back(i);
                rec(i);
                comb.pop_back();
            }
        };
        if (!all.empty()) rec(0);
    }

    // the twisted differential must square to zero once τ is Maurer-Cartan
    ChainComplex cx{out.carrier(), out.differential()};
    cx.validate();
    return out;
}

PiReport homotopy_groups(const SLAlgebra& l, int max_degree) {
    if (l.convention() == Convention::DgLie) {
        PiReport rep = homotopy_groups(l.suspend(), max_degree);
        rep.notes.push_back("dg Lie input was suspended; π_n corresponds to H_{n-1} of the given algebra");
        return rep;
    }
    if (!l.carrier().empty() && l.connectivity() < 1)
        throw HypothesisError("positively graded algebra (L = L_{>=1})");

    PiReport rep;
    rep.max_degree = max_degree;
    ChainComplex cx{l.carrier(), l.differential()};
    std::map<int, HomologyBasis> hs;
    for (int n = 1; n <= max_degree; ++n) {
        HomologyBasis h = homology(cx, n);
        PiReport::Entry e;
        e.degree = n;
        e.dim = h.dim;
        for (const auto& v : h.representatives) e.basis.push_back(format_combination(l.carrier(), n, v));
        rep.entries.push_back(std::move(e));
        hs[n] = std::move(h);
    }

    const HomologyBasis& h1 = hs[1];
    if (h1.dim > 0) {
        PiReport::Pi1 pi1;
        pi1.dim = h1.dim;
        for (const auto& v : h1.representatives) pi1.basis.push_back(format_combination(l.carrier(), 1, v));

        // homology coordinates: solve against [representatives | boundaries]
        std::vector<QVec> cols = h1.representatives;
        cols.insert(cols.end(), h1.boundaries.begin(), h1.boundaries.end());
        QMatrix span = QMatrix::from_columns(cols, l.carrier().dim(1));
        auto to_h = [&](const QVec& v) {
            auto c = solve_linear(span, v);
            if (!c) throw StructuralError("π₁ value is not a cycle modulo boundaries");
            return QVec(c->begin(), c->begin() + h1.dim);
        };

        // nilpotency class of the bracket on H_1
        std::vector<QVec> level = h1.representatives;  // in L_1 coordinates
        int cls = 0;
        const int kClassLimit = 64;
        while (!level.empty()) {
            if (++cls > kClassLimit) throw CapacityError("π₁ bracket is not nilpotent within the class limit");
            std::vector<QVec> next;
            SpanBuilder seen(h1.dim);
            for (const auto& rep1 : h1.representatives)
                for (const auto& w : level) {
                    GradedVec b = l.eval({GradedVec{1, rep1}, GradedVec{1, w}});
                    if (is_zero(b.coords)) continue;
                    if (seen.insert(to_h(b.coords))) next.push_back(b.coords);
                }
            level = std::move(next);
        }
        pi1.nilpotency_class = std::max(cls, 1);

        int cap = std::max(pi1.nilpotency_class, 1);
        pi1.bch_table.assign(h1.dim, std::vector<QVec>(h1.dim));
        for (int i = 0; i < h1.dim; ++i)
            for (int j = 0; j < h1.dim; ++j) {
                GradedVec z = bch(l, GradedVec{1, h1.representatives[i]}, GradedVec{1, h1.representatives[j]}, cap);
                pi1.bch_table[i][j] = to_h(z.coords);
            }
        rep.pi1 = std::move(pi1);
    }
    rep.notes.push_back("π₀ is a single point for positively graded algebras");
    return rep;
}

namespace {

using Word = std::vector<int>;
using Series = std::map<Word, Rat>;  // truncated free associative series, no constant term handling

Series series_mul(const Series& a, const Series& b, int cap) {
    Series out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            if (int(wa.size() + wb.size()) > cap) continue;
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out[w] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

// log(e^X e^Y) truncated at word length `cap`; letters 0 and 1.
Series bch_words(int cap) {
    Series prod;  // e^X e^Y - 1
    Series ex;    // e^X including the empty word
    ex[{}] = 1;
    {
        Word w;
        Rat c = 1;
        for (int k = 1; k <= cap; ++k) {
            w.push_back(0);
            c /= k;
            ex[w] = c;
        }
    }
    Series ey;
    ey[{}] = 1;
    {
        Word w;
        Rat c = 1;
        for (int k = 1; k <= cap; ++k) {
            w.push_back(1);
            c /= k;
            ey[w] = c;
        }
    }
    Series u = series_mul(ex, ey, cap);
    u.erase(Word{});
    Series log_out, upow = u;
    Rat sgn = 1;
    for (int m = 1; m <= cap; ++m) {
        for (const auto& [w, c] : upow) log_out[w] += sgn * c / m;
        upow = series_mul(upow, u, cap);
        sgn = -sgn;
    }
    for (auto it = log_out.begin(); it != log_out.end();)
        it = (it->second == 0) ? log_out.erase(it) : std::next(it);
    return log_out;
}

}  // namespace

GradedVec bch(const SLAlgebra& l, const GradedVec& x, const GradedVec& y, int class_cap) {
    if (x.degree != 1 || y.degree != 1)
        throw HypothesisError("BCH arguments live in the π₁ carrier (degree 1)");
    if (class_cap < 1) throw SchemaError("BCH class cap must be >= 1");
    Series words = bch_words(class_cap);
    GradedVec acc{1, QVec(l.carrier().dim(1))};
    for (const auto& [w, c] : words) {
        // right-normed evaluation [w_1,[w_2,[...,w_n]]] / n
        GradedVec v = (w.back() == 0) ? x : y;
        for (int i = int(w.size()) - 2; i >= 0; --i) v = l.eval({(w[i] == 0) ? x : y, v});
        axpy(acc.coords, c / int(w.size()), v.coords);
    }
    return acc;
}

GroupRep suspend_action(const GroupRep& rep) {
    GradedModule up;
    for (int n : rep.carrier().degrees())
        for (const auto& label : rep.carrier().labels(n)) up.add(n + 1, label);
    std::vector<LinearMap> mats;
    for (int g = 0; g < rep.group().order(); ++g) {
        LinearMap f(0);
        for (const auto& [n, b] : rep.matrix(g).blocks()) f.set_block(n + 1, b);
        mats.push_back(std::move(f));
    }
    return GroupRep(rep.group(), std::move(up), std::move(mats));
}

namespace {

// Common tail of the two fixed-point reports: cross-check
// dim H_n(L^G) = dim (H_n L)^G and return the report of H_*(L^G).
PiReport fixed_pi_with_crosscheck(const GSLAlgebra& gl, int max_degree) {
    const SLAlgebra& L = gl.algebra;
    if (!L.carrier().empty() && L.connectivity() < 1)
        throw HypothesisError("positively graded algebra (L = L_{>=1})");
    EquivarianceReport eq = check_equivariance(gl);
    if (!eq.ok) throw HypothesisError("action compatible with the brackets (" + eq.witness + ")");

    SLAlgebra fixed = fixed_subalgebra(gl);
    PiReport rep = fixed.carrier().empty()
                       ? [&] {
                             PiReport r;
                             r.max_degree = max_degree;
                             for (int n = 1; n <= max_degree; ++n) r.entries.push_back({n, 0, {}});
                             r.notes.push_back("π₀ is a single point for positively graded algebras");
                             return r;
                         }()
                       : homotopy_groups(fixed, max_degree);

    // independent side: fixed part of the induced action on H_*(L)
    ChainComplex cx{L.carrier(), L.differential()};
    for (int n = 1; n <= max_degree; ++n) {
        HomologyBasis h = homology(cx, n);
        int fixed_dim = 0;
        if (h.dim > 0) {
            auto mats = induced_homology_action(gl.action, h);
            std::vector<QMatrix> nontriv(mats.begin() + 1, mats.end());
            fixed_dim = int(fixed_space(nontriv, h.dim).size());
        }
        if (fixed_dim != rep.dim_at(n))
            throw StructuralError("fixed-point cross-check failed at degree " + std::to_string(n) +
                                  ": dim H(L^G) = " + std::to_string(rep.dim_at(n)) +
                                  " but dim (H L)^G = " + std::to_string(fixed_dim));
    }
    rep.notes.push_back("cross-check dim H_n(L^G) = dim (H_n L)^G passed for all reported degrees");
    return rep;
}

}  // namespace

PiReport homotopy_fixed_pi(const GSLAlgebra& gl, int max_degree) {
    if (gl.algebra.convention() == Convention::DgLie) {
        GSLAlgebra up{gl.algebra.suspend(), suspend_action(gl.action)};
        PiReport rep = fixed_pi_with_crosscheck(up, max_degree);
        rep.notes.push_back("dg Lie input was suspended; π_n corresponds to H_{n-1} of the given algebra");
        return rep;
    }
    return fixed_pi_with_crosscheck(gl, max_degree);
}

PiReport mapping_space_pi(const CdgaModel& a, const GSLAlgebra& gl, int max_degree) {
    GSLAlgebra shifted = gl.algebra.convention() == Convention::DgLie
                             ? GSLAlgebra{gl.algebra.suspend(), suspend_action(gl.action)}
                             : gl;
    if (!connectivity_guard(a, shifted.algebra))
        throw HypothesisError("CDGA concentrated in degrees strictly below the connectivity of L");
    CdgaReport areport = check_cdga(a);
    if (!areport.ok) throw HypothesisError("valid G-CDGA model (" + areport.format() + ")");

    TensorModel tm = tensor_model(a, shifted.algebra, max_degree, &shifted.action);
    if (!tm.action) throw StructuralError("tensor model did not produce the diagonal action");
    GSLAlgebra tensor{std::move(tm.algebra), std::move(*tm.action)};
    PiReport rep = fixed_pi_with_crosscheck(tensor, max_degree);
    rep.notes.push_back("model: G-invariants of the tensor of the CDGA with the algebra");
    return rep;
}

}  // namespace mcfix

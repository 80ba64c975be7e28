#include "mcfix/cdga.hpp"

#include <algorithm>
#include <climits>

namespace mcfix {

CdgaModel::CdgaModel(GradedModule carrier, int unit_index)
    : carrier_(std::move(carrier)), unit_index_(unit_index) {
    if (carrier_.empty() || carrier_.min_degree() < 0)
        throw SchemaError("CDGA carrier must live in non-negative degrees");
    if (unit_index_ < 0 || unit_index_ >= carrier_.dim(0))
        throw SchemaError("CDGA carrier needs a unit element in degree 0");
    d_ = LinearMap::zero(carrier_, carrier_, +1);
}

void CdgaModel::set_product(const BasisRef& a, const BasisRef& b, QVec value) {
    if (int(value.size()) != carrier_.dim(a.degree + b.degree))
        throw SchemaError("product value dimension mismatch at degrees " + std::to_string(a.degree) + "," +
                          std::to_string(b.degree));
    product_[{a, b}] = std::move(value);
}

void CdgaModel::set_differential_entry(const BasisRef& a, QVec value) {
    if (int(value.size()) != carrier_.dim(a.degree + 1))
        throw SchemaError("differential value dimension mismatch at degree " + std::to_string(a.degree));
    QMatrix block = d_.block(a.degree) ? *d_.block(a.degree)
                                       : QMatrix(carrier_.dim(a.degree + 1), carrier_.dim(a.degree));
    for (int i = 0; i < int(value.size()); ++i) block.at(i, a.index) = value[i];
    d_.set_block(a.degree, std::move(block));
}

void CdgaModel::set_action(GroupRep rep) {
    if (!(rep.carrier() == carrier_)) throw SchemaError("CDGA action carrier mismatch");
    action_ = std::move(rep);
}

QVec CdgaModel::product(const BasisRef& a, const BasisRef& b) const {
    auto it = product_.find({a, b});
    if (it != product_.end()) return it->second;
    if (a == unit()) {
        QVec v(carrier_.dim(b.degree));
        v[b.index] = 1;
        return v;
    }
    if (b == unit()) {
        QVec v(carrier_.dim(a.degree));
        v[a.index] = 1;
        return v;
    }
    return QVec(carrier_.dim(a.degree + b.degree));
}

GradedVec CdgaModel::multiply(const GradedVec& a, const GradedVec& b) const {
    GradedVec out{a.degree + b.degree, QVec(carrier_.dim(a.degree + b.degree))};
    for (int i = 0; i < int(a.coords.size()); ++i) {
        if (a.coords[i] == 0) continue;
        for (int j = 0; j < int(b.coords.size()); ++j) {
            if (b.coords[j] == 0) continue;
            axpy(out.coords, a.coords[i] * b.coords[j], product({a.degree, i}, {b.degree, j}));
        }
    }
    return out;
}

GradedVec CdgaModel::multiply_all(const std::vector<GradedVec>& factors) const {
    GradedVec acc = unit_vector();
    for (const auto& f : factors) acc = multiply(acc, f);
    return acc;
}

GradedVec CdgaModel::unit_vector() const {
    GradedVec v{0, QVec(carrier_.dim(0))};
    v.coords[unit_index_] = 1;
    return v;
}

std::string CdgaReport::format() const {
    if (ok) return "cdga axioms: ok";
    return "cdga axioms: FAIL [" + axiom + "] at " + witness;
}

CdgaReport check_cdga(const CdgaModel& a) {
    CdgaReport rep;
    const GradedModule& m = a.carrier();
    auto fail = [&](const std::string& axiom, const std::string& witness) {
        rep.ok = false;
        rep.axiom = axiom;
        rep.witness = witness;
    };

    std::vector<BasisRef> all;
    for (int n : m.degrees())
        for (int i = 0; i < m.dim(n); ++i) all.push_back({n, i});

    for (const auto& e : all) {
        QVec ue = a.product(a.unit(), e);
        QVec eu = a.product(e, a.unit());
        QVec expect(m.dim(e.degree));
        expect[e.index] = 1;
        if (!(ue == expect) || !(eu == expect)) {
            fail("unitality", m.label(e.degree, e.index));
            return rep;
        }
    }

    for (const auto& x : all)
        for (const auto& y : all) {
            QVec xy = a.product(x, y);
            QVec yx = a.product(y, x);
            Rat s = ((x.degree * y.degree) & 1) == 0 ? 1 : -1;
            if (!(xy == s * yx)) {
                fail("graded commutativity", m.label(x.degree, x.index) + ", " + m.label(y.degree, y.index));
                return rep;
            }
        }

    for (const auto& x : all)
        for (const auto& y : all)
            for (const auto& z : all) {
                GradedVec ex = basis_vector(m, x.degree, x.index);
                GradedVec ey = basis_vector(m, y.degree, y.index);
                GradedVec ez = basis_vector(m, z.degree, z.index);
                GradedVec l = a.multiply(a.multiply(ex, ey), ez);
                GradedVec r = a.multiply(ex, a.multiply(ey, ez));
                if (!(l.coords == r.coords)) {
                    fail("associativity", m.label(x.degree, x.index) + ", " + m.label(y.degree, y.index) + ", " +
                                              m.label(z.degree, z.index));
                    return rep;
                }
            }

    // d² = 0
    for (const auto& x : all) {
        GradedVec ex = basis_vector(m, x.degree, x.index);
        GradedVec dx = a.differential().apply(ex, m.dim(x.degree + 1));
        GradedVec ddx = a.differential().apply(dx, m.dim(x.degree + 2));
        if (!is_zero(ddx.coords)) {
            fail("d^2 = 0", m.label(x.degree, x.index));
            return rep;
        }
    }

    // Leibniz
    for (const auto& x : all)
        for (const auto& y : all) {
            GradedVec ex = basis_vector(m, x.degree, x.index);
            GradedVec ey = basis_vector(m, y.degree, y.index);
            GradedVec xy = a.multiply(ex, ey);
            GradedVec dxy = a.differential().apply(xy, m.dim(xy.degree + 1));
            GradedVec dx = a.differential().apply(ex, m.dim(x.degree + 1));
            GradedVec dy = a.differential().apply(ey, m.dim(y.degree + 1));
            GradedVec rhs = a.multiply(dx, ey);
            Rat s = (x.degree & 1) == 0 ? 1 : -1;
            GradedVec t = a.multiply(ex, dy);
            axpy(rhs.coords, s, t.coords);
            if (!(dxy.coords == rhs.coords)) {
                fail("Leibniz", m.label(x.degree, x.index) + ", " + m.label(y.degree, y.index));
                return rep;
            }
        }

    if (a.action()) {
        const GroupRep& rho = *a.action();
        if (!rho.homomorphism_ok()) {
            fail("action is a group homomorphism", "matrix(g)matrix(h) != matrix(gh)");
            return rep;
        }
        for (int g = 0; g < rho.group().order(); ++g) {
            for (const auto& x : all)
                for (const auto& y : all) {
                    GradedVec gx{x.degree, rho.matrix(g).block(x.degree)->column(x.index)};
                    GradedVec gy{y.degree, rho.matrix(g).block(y.degree)->column(y.index)};
                    GradedVec lhs{x.degree + y.degree,
                                  rho.matrix(g).block(x.degree + y.degree)
                                      ? rho.matrix(g).block(x.degree + y.degree)->apply(a.product(x, y))
                                      : QVec(m.dim(x.degree + y.degree))};
                    GradedVec rhs = a.multiply(gx, gy);
                    if (!(lhs.coords == rhs.coords)) {
                        fail("action respects the product",
                             rho.group().element_name(g) + " on " + m.label(x.degree, x.index) + ", " +
                                 m.label(y.degree, y.index));
                        return rep;
                    }
                }
            std::string w;
            if (!rho.commutes_with(a.differential(), &w)) {
                fail("action respects the differential", w);
                return rep;
            }
        }
    }
    return rep;
}

bool connectivity_guard(const CdgaModel& a, const SLAlgebra& l) {
    int conn = l.connectivity();
    if (conn == INT_MAX) return true;
    return a.top_degree() < conn;
}

TensorModel tensor_model(const CdgaModel& a, const SLAlgebra& l, int degree_cap,
                         const GroupRep* l_action) {
    if (l.convention() != Convention::Shifted)
        throw HypothesisError("tensor model expects the shifted convention");
    TensorModel out{SLAlgebra(GradedModule{}, Convention::Shifted, 1, degree_cap), std::nullopt, false, {}};

    GradedModule carrier;
    std::map<std::pair<BasisRef, BasisRef>, BasisRef> pair_index;  // (L ref, A ref) -> tensor ref
    for (int da : a.carrier().degrees())
        for (int ia = 0; ia < a.carrier().dim(da); ++ia)
            for (int dx : l.carrier().degrees())
                for (int ix = 0; ix < l.carrier().dim(dx); ++ix) {
                    int deg = dx - da;
                    if (deg <= 0) {
                        out.dropped_nonpositive = true;
                        continue;
                    }
                    if (deg > degree_cap) continue;
                    std::string label = a.carrier().label(da, ia) + "⊗" + l.carrier().label(dx, ix);
                    BasisRef ref{deg, carrier.add(deg, std::move(label))};
                    pair_index[{{dx, ix}, {da, ia}}] = ref;
                }

    SLAlgebra t(carrier, Convention::Shifted, l.arity_cap(), degree_cap);
    if (out.dropped_nonpositive) t.set_truncated_below(1);
    for (const auto& [key, ref] : pair_index) {
        t.set_weight(ref, l.weight(key.first));
        out.factors[ref] = {key.first, key.second};
    }

    auto project_pair = [&](const BasisRef& x, const BasisRef& bA) -> std::optional<BasisRef> {
        auto it = pair_index.find({x, bA});
        if (it == pair_index.end()) return std::nullopt;
        return it->second;
    };

    // value of Σ c_y c_b (y ⊗ b) inside the truncated carrier
    auto assemble = [&](int out_degree, const GradedVec& lv, const GradedVec& av, const Rat& scale) {
        QVec v(carrier.dim(out_degree));
        for (int iy = 0; iy < int(lv.coords.size()); ++iy) {
            if (lv.coords[iy] == 0) continue;
            for (int ib = 0; ib < int(av.coords.size()); ++ib) {
                if (av.coords[ib] == 0) continue;
                auto ref = project_pair({lv.degree, iy}, {av.degree, ib});
                if (!ref) continue;  // truncated away
                v[ref->index] += scale * lv.coords[iy] * av.coords[ib];
            }
        }
        return v;
    };

    // ℓ_1
    for (const auto& [key, ref] : pair_index) {
        const BasisRef x = key.first;
        const BasisRef bA = key.second;
        QVec value(carrier.dim(ref.degree - 1));
        GradedVec l1x = l.eval_basis({x});
        GradedVec ea = basis_vector(a.carrier(), bA.degree, bA.index);
        value += assemble(ref.degree - 1, l1x, ea, 1);
        GradedVec da = a.differential().apply(ea, a.carrier().dim(bA.degree + 1));
        GradedVec ex = basis_vector(l.carrier(), x.degree, x.index);
        value += assemble(ref.degree - 1, ex, da, (x.degree & 1) == 0 ? 1 : -1);
        if (!is_zero(value)) t.add_bracket({ref}, std::move(value));
    }

    // higher brackets on canonical tuples of tensor basis elements
    std::vector<BasisRef> all;
    for (int n : t.carrier().degrees())
        for (int i = 0; i < t.carrier().dim(n); ++i) all.push_back({n, i});
    for (int k : l.arities()) {
        if (k < 2 || k > l.arity_cap()) continue;
        std::vector<int> comb;
        std::function<void(int)> rec = [&](int start) {
            if (int(comb.size()) == k) {
                Tuple tup;
                std::vector<BasisRef> xs, as;
                for (int c : comb) {
                    tup.push_back(all[c]);
                    xs.push_back(out.factors[all[c]].first);
                    as.push_back(out.factors[all[c]].second);
                }
                // ε = Σ_{i>j} |x_i||a_j|
                int e = 0;
                for (size_t i = 0; i < xs.size(); ++i)
                    for (size_t j = 0; j < i; ++j) e += xs[i].degree * as[j].degree;
                Tuple xtup(xs.begin(), xs.end());
                GradedVec inner = l.eval_basis(xtup);
                if (!is_zero(inner.coords)) {
                    std::vector<GradedVec> avs;
                    for (const auto& bA : as) avs.push_back(basis_vector(a.carrier(), bA.degree, bA.index));
                    GradedVec prod = a.multiply_all(avs);
                    int od = t.bracket_output_degree(tup);
                    QVec value = assemble(od, inner, prod, (e & 1) == 0 ? 1 : -1);
                    if (!is_zero(value)) t.add_bracket(tup, std::move(value));
                }
                return;
            }
            for (int i = start; i < int(all.size()); ++i) {
                comb.push_back(i);
                rec(i);
                comb.pop_back();
            }
        };
        rec(0);
    }

    // diagonal action g(x⊗a) = (gx)⊗(ga)
    if (l_action) {
        if (!(l_action->carrier() == l.carrier())) throw SchemaError("tensor action carrier mismatch");
        GroupRep a_action = a.action() ? *a.action() : GroupRep::trivial(l_action->group(), a.carrier());
        if (!(a_action.group() == l_action->group()))
            throw SchemaError("tensor factors carry actions of different groups");
        std::vector<LinearMap> mats;
        for (int g = 0; g < l_action->group().order(); ++g) {
            LinearMap rho(0);
            std::map<int, QMatrix> blocks;
            for (int n : carrier.degrees()) blocks[n] = QMatrix(carrier.dim(n), carrier.dim(n));
            for (const auto& [key, ref] : pair_index) {
                const QMatrix* lx = l_action->matrix(g).block(key.first.degree);
                const QMatrix* ab = a_action.matrix(g).block(key.second.degree);
                if (!lx || !ab) throw StructuralError("action matrix missing on a tensor factor");
                QVec xv = lx->column(key.first.index);
                QVec av = ab->column(key.second.index);
                for (int iy = 0; iy < int(xv.size()); ++iy) {
                    if (xv[iy] == 0) continue;
                    for (int ib = 0; ib < int(av.size()); ++ib) {
                        if (av[ib] == 0) continue;
                        auto target = project_pair({key.first.degree, iy}, {key.second.degree, ib});
                        if (!target) throw StructuralError("diagonal action leaves the tensor carrier");
                        blocks[ref.degree].at(target->index, ref.index) += xv[iy] * av[ib];
                    }
                }
            }
            for (auto& [n, blk] : blocks) rho.set_block(n, std::move(blk));
            mats.push_back(std::move(rho));
        }
        out.action = GroupRep(l_action->group(), carrier, std::move(mats));
    }
    out.algebra = std::move(t);
    return out;
}

CdgaModel ce_cochains(const SLAlgebra& l, int wordlength_cap, int degree_cap, const GroupRep* action) {
    if (l.carrier().empty()) throw HypothesisError("cochains of the zero algebra");
    if (l.connectivity() < 1) throw HypothesisError("cochains need a positively graded algebra");
    if (wordlength_cap < 1) throw SchemaError("wordlength cap must be >= 1");

    // generators dual to the basis of L; cohomological degree = L degree
    std::vector<BasisRef> gens;
    for (int n : l.carrier().degrees())
        for (int i = 0; i < l.carrier().dim(n); ++i) gens.push_back({n, i});
    auto gen_label = [&](const BasisRef& b) { return l.carrier().label(b.degree, b.index) + "^"; };

    // monomials: sorted multisets of generator ids, odd degrees squarefree
    using Mono = std::vector<int>;  // indices into gens, non-decreasing
    std::map<Mono, BasisRef> mono_ref;
    GradedModule carrier;
    int unit_index = carrier.add(0, "1");
    mono_ref[{}] = {0, unit_index};
    {
        std::vector<Mono> layer{{}};
        for (int w = 1; w <= wordlength_cap; ++w) {
            std::vector<Mono> next;
            for (const Mono& m : layer)
                for (int gi = m.empty() ? 0 : m.back(); gi < int(gens.size()); ++gi) {
                    if (!m.empty() && gi == m.back() && (gens[gi].degree & 1)) continue;  // odd square
                    Mono e = m;
                    e.push_back(gi);
                    int deg = 0;
                    for (int x : e) deg += gens[x].degree;
                    if (deg > degree_cap) continue;
                    next.push_back(std::move(e));
                }
            for (const Mono& m : next) {
                int deg = 0;
                std::string label;
                for (size_t i = 0; i < m.size(); ++i) {
                    deg += gens[m[i]].degree;
                    if (i) label += "·";
                    label += gen_label(gens[m[i]]);
                }
                mono_ref[m] = {deg, carrier.add(deg, label)};
            }
            layer = std::move(next);
        }
    }

    CdgaModel c(carrier, unit_index);

    // product: merge multisets with the graded-commutative sign
    auto merge = [&](const Mono& a, const Mono& b) -> std::pair<Mono, int> {
        Mono m = a;
        m.insert(m.end(), b.begin(), b.end());
        int e = 0;
        for (size_t i = 1; i < m.size(); ++i)
            for (size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
                e += gens[m[j]].degree * gens[m[j - 1]].degree;
                std::swap(m[j], m[j - 1]);
            }
        return {std::move(m), e};
    };
    auto mono_lookup = [&](const Mono& m) -> std::optional<BasisRef> {
        auto it = mono_ref.find(m);
        if (it == mono_ref.end()) return std::nullopt;
        return it->second;
    };
    for (const auto& [ma, ra] : mono_ref)
        for (const auto& [mb, rb] : mono_ref) {
            if (ma.empty() || mb.empty()) continue;  // unit products are implied
            bool zero = false;
            auto [m, e] = merge(ma, mb);
            for (size_t i = 0; i + 1 < m.size(); ++i)
                if (m[i] == m[i + 1] && (gens[m[i]].degree & 1)) { zero = true; break; }
            QVec value(carrier.dim(ra.degree + rb.degree));
            if (!zero) {
                auto ref = mono_lookup(m);
                if (ref) value[ref->index] = ((e & 1) == 0) ? 1 : -1;
            }
            c.set_product(ra, rb, std::move(value));
        }

    // d on generators: d(v_j) = Σ_T coeff_j(ℓ(x_T)) / aut(T) · v_T
    std::map<BasisRef, QVec> dgen;
    for (const auto& b : gens) dgen[b] = QVec(carrier.dim(b.degree + 1));
    for (const auto& [tup, val] : l.table()) {
        // aut(T) = product of multiplicities!
        Rat aut = 1;
        int run = 1;
        for (size_t i = 1; i <= tup.size(); ++i) {
            if (i < tup.size() && tup[i] == tup[i - 1])
                aut *= ++run;
            else
                run = 1;
        }
        Mono m;
        for (const auto& b : tup) {
            int gi = int(std::lower_bound(gens.begin(), gens.end(), b) - gens.begin());
            m.push_back(gi);
        }
        std::sort(m.begin(), m.end());
        auto ref = mono_lookup(m);
        if (!ref) continue;  // beyond the wordlength/degree caps
        int od = l.bracket_output_degree(tup);
        for (int j = 0; j < int(val.size()); ++j) {
            if (val[j] == 0) continue;
            dgen[{od, j}][ref->index] += val[j] / aut;
        }
    }

    // extend to monomials as a degree +1 derivation
    for (const auto& [m, r] : mono_ref) {
        if (m.empty()) continue;
        GradedVec acc{r.degree + 1, QVec(carrier.dim(r.degree + 1))};
        int sign_exp = 0;
        for (size_t i = 0; i < m.size(); ++i) {
            GradedVec dv{gens[m[i]].degree + 1, dgen[gens[m[i]]]};
            Mono left(m.begin(), m.begin() + i);
            Mono right(m.begin() + i + 1, m.end());
            GradedVec lf = c.unit_vector();
            for (int gi : left) {
                auto ref = mono_lookup({gi});
                lf = c.multiply(lf, basis_vector(carrier, ref->degree, ref->index));
            }
            GradedVec term = c.multiply(lf, dv);
            for (int gi : right) {
                auto ref = mono_lookup({gi});
                term = c.multiply(term, basis_vector(carrier, ref->degree, ref->index));
            }
            axpy(acc.coords, ((sign_exp & 1) == 0) ? 1 : -1, term.coords);
            sign_exp += gens[m[i]].degree;
        }
        if (!is_zero(acc.coords)) c.set_differential_entry(r, acc.coords);
    }

    if (action) {
        if (!(action->carrier() == l.carrier())) throw SchemaError("CE action carrier mismatch");
        // embedding of a generator-dual vector into CE carrier coordinates
        auto embed_dual = [&](int degree, const QVec& w) {
            GradedVec v{degree, QVec(carrier.dim(degree))};
            for (int i = 0; i < int(w.size()); ++i) {
                if (w[i] == 0) continue;
                BasisRef b{degree, i};
                int gi = int(std::lower_bound(gens.begin(), gens.end(), b) - gens.begin());
                v.coords[mono_ref.at({gi}).index] = w[i];
            }
            return v;
        };
        // contragredient on generators, extended multiplicatively
        std::vector<LinearMap> mats;
        for (int g = 0; g < action->group().order(); ++g) {
            LinearMap rho(0);
            std::map<int, QMatrix> blocks;
            for (int n : carrier.degrees()) blocks[n] = QMatrix(carrier.dim(n), carrier.dim(n));
            int ginv = action->group().inverse(g);
            for (const auto& [m, r] : mono_ref) {
                GradedVec img = c.unit_vector();
                for (int gi : m) {
                    const BasisRef& b = gens[gi];
                    const QMatrix* blk = action->matrix(ginv).block(b.degree);
                    if (!blk) throw StructuralError("action matrix missing at degree " + std::to_string(b.degree));
                    // (g·x)^ = g^{-1}·(x^): matrix of the dual action is the
                    // transpose of the inverse element's matrix
                    img = c.multiply(img, embed_dual(b.degree, blk->row(b.index)));
                }
                for (int i = 0; i < int(img.coords.size()); ++i) blocks[r.degree].at(i, r.index) = img.coords[i];
            }
            for (auto& [n, blk] : blocks) rho.set_block(n, std::move(blk));
            mats.push_back(std::move(rho));
        }
        c.set_action(GroupRep(action->group(), carrier, std::move(mats)));
    }
    return c;
}

}  // namespace mcfix

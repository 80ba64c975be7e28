#include "mcfix/simplicial.hpp"

#include <algorithm>
#include <functional>

namespace mcfix {

void IdentityReport::merge(const IdentityReport& o) {
    checks += o.checks;
    if (ok && !o.ok) {
        ok = false;
        witness = o.witness;
    }
}

std::string IdentityReport::format(const std::string& name) const {
    std::string s = name + ": " + (ok ? "ok" : "FAIL") + " (" + std::to_string(checks) + " checks)";
    if (!ok && !witness.empty()) s += " -- " + witness;
    return s;
}

// ---------------------------------------------------------------- EGComplex

EGComplex::EGComplex(FiniteGroup g, int m_max, long max_cells) : g_(std::move(g)), m_max_(m_max) {
    if (m_max_ < 1) throw SchemaError("EG needs m_max >= 1");
    long total = 0, layer = 1;
    for (int n = 0; n <= m_max_; ++n) {
        layer *= g_.order();
        total += layer;
        if (total > max_cells)
            throw CapacityError("EG enumeration needs " + std::to_string(total) + " cells, above the cap of " +
                                std::to_string(max_cells));
    }
}

long EGComplex::level_size(int n) const {
    long s = 1;
    for (int k = 0; k <= n; ++k) s *= g_.order();
    return s;
}

std::vector<int> EGComplex::decode(int level, long idx) const {
    std::vector<int> t(level + 1);
    for (int p = level; p >= 0; --p) {
        t[p] = int(idx % g_.order());
        idx /= g_.order();
    }
    return t;  // t[0] = g_level (leftmost), t[level] = g_0
}

long EGComplex::encode(const std::vector<int>& tuple) const {
    long idx = 0;
    for (int v : tuple) idx = idx * g_.order() + v;
    return idx;
}

long EGComplex::face(int level, int i, long idx) const {
    std::vector<int> t = decode(level, idx);
    if (i == 0) {
        t.pop_back();  // drop g_0
    } else {
        // g_j sits at position level - j; merge (g_i, g_{i-1})
        int p = level - i;
        t[p] = g_.mul(t[p], t[p + 1]);
        t.erase(t.begin() + p + 1);
    }
    return encode(t);
}

long EGComplex::degeneracy(int level, int j, long idx) const {
    std::vector<int> t = decode(level, idx);
    t.insert(t.begin() + (level - j + 1), 0);  // identity to the right of g_j
    return encode(t);
}

long EGComplex::act(int g, int level, long idx) const {
    std::vector<int> t = decode(level, idx);
    t[0] = g_.mul(g, t[0]);
    return encode(t);
}

bool EGComplex::nondegenerate(int level, long idx) const {
    std::vector<int> t = decode(level, idx);
    for (int p = 1; p <= level; ++p)
        if (t[p] == 0) return false;
    return true;
}

IdentityReport EGComplex::verify_identities() const {
    IdentityReport rep;
    auto fail = [&](int level, long idx, const std::string& what) {
        if (!rep.ok) return;
        rep.ok = false;
        std::string t = "(";
        auto tup = decode(level, idx);
        for (size_t k = 0; k < tup.size(); ++k) t += (k ? "," : "") + g_.element_name(tup[k]);
        rep.witness = what + " at level-" + std::to_string(level) + " tuple " + t + ")";
    };
    for (int n = 0; n <= m_max_; ++n) {
        long sz = level_size(n);
        for (long idx = 0; idx < sz; ++idx) {
            if (n >= 2)
                for (int i = 0; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j) {
                        ++rep.checks;
                        if (face(n - 1, i, face(n, j, idx)) != face(n - 1, j - 1, face(n, i, idx)))
                            fail(n, idx, "d_i d_j = d_{j-1} d_i fails for i=" + std::to_string(i) +
                                             ", j=" + std::to_string(j));
                    }
            if (n + 1 <= m_max_)
                for (int j = 0; j <= n; ++j) {
                    long sj = degeneracy(n, j, idx);
                    ++rep.checks;
                    if (face(n + 1, j, sj) != idx || face(n + 1, j + 1, sj) != idx)
                        fail(n, idx, "d_j s_j = id = d_{j+1} s_j fails for j=" + std::to_string(j));
                    if (n >= 1)
                        for (int i = 0; i <= n + 1; ++i) {
                            if (i == j || i == j + 1) continue;
                            ++rep.checks;
                            long lhs = face(n + 1, i, sj);
                            long rhs = (i < j) ? degeneracy(n - 1, j - 1, face(n, i, idx))
                                               : degeneracy(n - 1, j, face(n, i - 1, idx));
                            if (lhs != rhs)
                                fail(n, idx, "d_i s_j exchange fails for i=" + std::to_string(i) +
                                                 ", j=" + std::to_string(j));
                        }
                }
            if (n + 2 <= m_max_)
                for (int i = 0; i <= n; ++i)
                    for (int j = i; j <= n; ++j) {
                        ++rep.checks;
                        if (degeneracy(n + 1, i, degeneracy(n, j, idx)) !=
                            degeneracy(n + 1, j + 1, degeneracy(n, i, idx)))
                            fail(n, idx, "s_i s_j = s_{j+1} s_i fails for i=" + std::to_string(i) +
                                             ", j=" + std::to_string(j));
                    }
            for (int g = 0; g < g_.order(); ++g) {
                if (n >= 1)
                    for (int i = 0; i <= n; ++i) {
                        ++rep.checks;
                        if (face(n, i, act(g, n, idx)) != act(g, n - 1, face(n, i, idx)))
                            fail(n, idx, "action does not commute with d_" + std::to_string(i));
                    }
                if (n + 1 <= m_max_)
                    for (int j = 0; j <= n; ++j) {
                        ++rep.checks;
                        if (degeneracy(n, j, act(g, n, idx)) != act(g, n + 1, degeneracy(n, j, idx)))
                            fail(n, idx, "action does not commute with s_" + std::to_string(j));
                    }
            }
        }
    }
    return rep;
}

IdentityReport EGComplex::verify_freeness() const {
    IdentityReport rep;
    for (int n = 0; n <= m_max_; ++n) {
        long sz = level_size(n);
        for (long idx = 0; idx < sz; ++idx)
            for (int g = 1; g < g_.order(); ++g) {
                ++rep.checks;
                if (act(g, n, idx) == idx) {
                    rep.ok = false;
                    rep.witness = "non-identity element " + g_.element_name(g) + " fixes a level-" +
                                  std::to_string(n) + " simplex";
                    return rep;
                }
            }
    }
    return rep;
}

// --------------------------------------------- subsets of [n] as cell charts

namespace {

std::vector<uint32_t> subsets_of_size(int n, int size) {
    std::vector<uint32_t> out;
    for (uint32_t s = 0; s < (1u << (n + 1)); ++s)
        if (__builtin_popcount(s) == size) out.push_back(s);
    return out;  // numerically sorted: deterministic
}

// image of a cell under a vertex map; 0 when the map is not injective on it
uint32_t push_cell(uint32_t s, const std::vector<int>& vertex_map) {
    uint32_t out = 0;
    int count = 0;
    for (int b = 0; b < 32; ++b)
        if (s & (1u << b)) {
            out |= 1u << vertex_map[b];
            ++count;
        }
    return __builtin_popcount(out) == count ? out : 0;
}

}  // namespace

// ---------------------------------------------------------- SimplicialQModule

std::optional<QVec> SimplicialQModule::express(int level, const QVec& ambient_vec) const {
    const auto& fc = free_cols[level];
    QVec coords(fc.size());
    for (size_t i = 0; i < fc.size(); ++i) coords[i] = ambient_vec[fc[i]];
    if (!(to_ambient(level, coords) == ambient_vec)) return std::nullopt;
    return coords;
}

QVec SimplicialQModule::to_ambient(int level, const QVec& coords) const {
    QVec v(ambient[level].pairs.size());
    for (size_t i = 0; i < coords.size(); ++i) axpy(v, coords[i], cycles[level][i]);
    return v;
}

bool SimplicialQModule::invariant(int level, const QVec& coords) const {
    if (action.empty()) return true;
    for (const auto& per_g : action)
        if (!(per_g[level].apply(coords) == coords)) return false;
    return true;
}

IdentityReport SimplicialQModule::verify_identities() const {
    IdentityReport rep;
    auto fail = [&](const std::string& w) {
        if (rep.ok) {
            rep.ok = false;
            rep.witness = w;
        }
    };
    auto eye = [&](int level) { return QMatrix::identity(dims[level]); };
    for (int n = 0; n <= m_max; ++n) {
        if (n >= 2)
            for (int i = 0; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    ++rep.checks;
                    if (!(faces[n - 1][i] * faces[n][j] == faces[n - 1][j - 1] * faces[n][i]))
                        fail("face exchange d_i d_j at level " + std::to_string(n));
                }
        if (n + 1 <= m_max)
            for (int j = 0; j <= n; ++j) {
                ++rep.checks;
                if (!(faces[n + 1][j] * degens[n][j] == eye(n)) ||
                    !(faces[n + 1][j + 1] * degens[n][j] == eye(n)))
                    fail("d_j s_j = id at level " + std::to_string(n));
                if (n >= 1)
                    for (int i = 0; i <= n + 1; ++i) {
                        if (i == j || i == j + 1) continue;
                        ++rep.checks;
                        QMatrix lhs = faces[n + 1][i] * degens[n][j];
                        QMatrix rhs = (i < j) ? degens[n - 1][j - 1] * faces[n][i]
                                              : degens[n - 1][j] * faces[n][i - 1];
                        if (!(lhs == rhs)) fail("d_i s_j exchange at level " + std::to_string(n));
                    }
            }
        if (n + 2 <= m_max)
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    ++rep.checks;
                    if (!(degens[n + 1][i] * degens[n][j] == degens[n + 1][j + 1] * degens[n][i]))
                        fail("s_i s_j exchange at level " + std::to_string(n));
                }
        for (const auto& per_g : action) {
            if (n >= 1)
                for (int i = 0; i <= n; ++i) {
                    ++rep.checks;
                    if (!(per_g[n - 1] * faces[n][i] == faces[n][i] * per_g[n]))
                        fail("action does not commute with a face at level " + std::to_string(n));
                }
            if (n + 1 <= m_max)
                for (int j = 0; j <= n; ++j) {
                    ++rep.checks;
                    if (!(per_g[n + 1] * degens[n][j] == degens[n][j] * per_g[n]))
                        fail("action does not commute with a degeneracy at level " + std::to_string(n));
                }
        }
    }
    return rep;
}

SimplicialQModule abelian_mc_model(const SLAlgebra& l, int m_max, const GroupRep* action) {
    if (!l.is_abelian())
        throw HypothesisError("abelian algebra (all brackets of arity >= 2 vanish)");
    SimplicialQModule m;
    m.m_max = m_max;
    m.ambient.resize(m_max + 1);
    m.cycles.resize(m_max + 1);
    m.free_cols.resize(m_max + 1);
    m.dims.resize(m_max + 1);

    // ambient chart of tensor degree d over Δ^n: pairs (x, S) with |S| = |x| - d + 1
    auto build_chart = [&](int n, int d) {
        SimplicialQModule::Ambient a;
        for (int deg : l.carrier().degrees()) {
            int k = deg - d;  // cell dimension
            if (k < 0 || k > n) continue;
            for (int i = 0; i < l.carrier().dim(deg); ++i)
                for (uint32_t s : subsets_of_size(n, k + 1)) {
                    a.index[{{deg, i}, s}] = int(a.pairs.size());
                    a.pairs.push_back({{deg, i}, s});
                }
        }
        return a;
    };

    // D(x ⊗ b_S) = ℓ1(x) ⊗ b_S + (-1)^{|x|} x ⊗ δ(b_S)
    auto differential_matrix = [&](int n, const SimplicialQModule::Ambient& from,
                                   const SimplicialQModule::Ambient& to) {
        QMatrix d(int(to.pairs.size()), int(from.pairs.size()));
        for (int col = 0; col < int(from.pairs.size()); ++col) {
            auto [x, s] = from.pairs[col];
            GradedVec l1 = l.eval_basis({x});
            for (int yi = 0; yi < int(l1.coords.size()); ++yi) {
                if (l1.coords[yi] == 0) continue;
                auto it = to.index.find({{l1.degree, yi}, s});
                if (it != to.index.end()) d.at(it->second, col) += l1.coords[yi];
            }
            Rat sgn = (x.degree & 1) ? -1 : 1;
            for (int v = 0; v <= n; ++v) {
                if (s & (1u << v)) continue;
                uint32_t s2 = s | (1u << v);
                int pos = __builtin_popcount(s2 & ((1u << v) - 1));
                auto it = to.index.find({x, s2});
                if (it != to.index.end()) d.at(it->second, col) += ((pos & 1) ? -sgn : sgn);
            }
        }
        return d;
    };

    for (int n = 0; n <= m_max; ++n) {
        m.ambient[n] = build_chart(n, 0);
        auto below = build_chart(n, -1);
        QMatrix d0 = differential_matrix(n, m.ambient[n], below);
        RrefResult rr = rref(d0);
        std::vector<bool> pivot(d0.cols(), false);
        for (int c : rr.pivot_cols) pivot[c] = true;
        for (int c = 0; c < d0.cols(); ++c)
            if (!pivot[c]) m.free_cols[n].push_back(c);
        for (size_t f = 0; f < m.free_cols[n].size(); ++f) {
            QVec v(d0.cols());
            v[m.free_cols[n][f]] = 1;
            for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
                v[rr.pivot_cols[i]] = -rr.mat.at(int(i), m.free_cols[n][f]);
            m.cycles[n].push_back(std::move(v));
        }
        m.dims[n] = int(m.cycles[n].size());
    }

    // ambient map induced by a vertex map φ: [n'] -> [n]; entries (x, R) <- (x, φR)
    auto pullback_matrix = [&](int n_from, int n_to, const std::vector<int>& phi) {
        const auto& from = m.ambient[n_from];
        const auto& to = m.ambient[n_to];
        QMatrix p(int(to.pairs.size()), int(from.pairs.size()));
        for (int row = 0; row < int(to.pairs.size()); ++row) {
            auto [x, r] = to.pairs[row];
            uint32_t img = push_cell(r, phi);
            if (img == 0) continue;
            auto it = from.index.find({x, img});
            if (it != from.index.end()) p.at(row, it->second) = 1;
        }
        return p;
    };

    auto in_cycle_coords = [&](int n_from, int n_to, const QMatrix& ambient_map, const char* what) {
        QMatrix out(m.dims[n_to], m.dims[n_from]);
        for (int j = 0; j < m.dims[n_from]; ++j) {
            QVec img = ambient_map.apply(m.cycles[n_from][j]);
            auto c = m.express(n_to, img);
            if (!c) throw StructuralError(std::string(what) + " does not preserve cycles");
            for (int i = 0; i < m.dims[n_to]; ++i) out.at(i, j) = (*c)[i];
        }
        return out;
    };

    m.faces.resize(m_max + 1);
    m.degens.resize(m_max + 1);
    for (int n = 1; n <= m_max; ++n)
        for (int i = 0; i <= n; ++i) {
            std::vector<int> delta(n);  // δ^i : [n-1] -> [n]
            for (int v = 0; v < n; ++v) delta[v] = (v < i) ? v : v + 1;
            m.faces[n].push_back(in_cycle_coords(n, n - 1, pullback_matrix(n, n - 1, delta), "face"));
        }
    for (int n = 0; n + 1 <= m_max; ++n)
        for (int j = 0; j <= n; ++j) {
            std::vector<int> sig(n + 2);  // σ^j : [n+1] -> [n]
            for (int v = 0; v <= n + 1; ++v) sig[v] = (v <= j) ? std::min(v, j) : v - 1;
            m.degens[n].push_back(in_cycle_coords(n, n + 1, pullback_matrix(n, n + 1, sig), "degeneracy"));
        }

    if (action) {
        if (!(action->carrier() == l.carrier())) throw SchemaError("model action carrier mismatch");
        std::string w;
        if (!action->commutes_with(l.differential(), &w))
            throw StructuralError("action is not a chain map: " + w);
        for (int g = 0; g < action->group().order(); ++g) {
            std::vector<QMatrix> per_level;
            for (int n = 0; n <= m_max; ++n) {
                const auto& amb = m.ambient[n];
                QMatrix rho(int(amb.pairs.size()), int(amb.pairs.size()));
                for (int col = 0; col < int(amb.pairs.size()); ++col) {
                    auto [x, s] = amb.pairs[col];
                    const QMatrix* b = action->matrix(g).block(x.degree);
                    if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(x.degree));
                    for (int yi = 0; yi < b->rows(); ++yi) {
                        if (b->at(yi, x.index) == 0) continue;
                        rho.at(amb.index.at({{x.degree, yi}, s}), col) = b->at(yi, x.index);
                    }
                }
                per_level.push_back(in_cycle_coords(n, n, rho, "action"));
            }
            m.action.push_back(std::move(per_level));
        }
    }
    return m;
}

// ----------------------------------------------------------- GSimplicialMap

IdentityReport GSimplicialMap::verify_simplicial() const {
    IdentityReport rep;
    for (int n = 1; n <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int i = 0; i <= n; ++i) {
                ++rep.checks;
                if (!(m->faces[n][i].apply(values[n][t]) == values[n - 1][eg->face(n, i, t)])) {
                    rep.ok = false;
                    rep.witness = "face d_" + std::to_string(i) + " at level " + std::to_string(n);
                    return rep;
                }
            }
    for (int n = 0; n + 1 <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int j = 0; j <= n; ++j) {
                ++rep.checks;
                if (!(m->degens[n][j].apply(values[n][t]) == values[n + 1][eg->degeneracy(n, j, t)])) {
                    rep.ok = false;
                    rep.witness = "degeneracy s_" + std::to_string(j) + " at level " + std::to_string(n);
                    return rep;
                }
            }
    return rep;
}

IdentityReport GSimplicialMap::verify_equivariant() const {
    IdentityReport rep;
    int order = eg->group().order();
    for (int n = 0; n <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int g = 0; g < order; ++g) {
                ++rep.checks;
                QVec lhs = values[n][eg->act(g, n, t)];
                QVec rhs = m->action.empty() ? values[n][t] : m->action[g][n].apply(values[n][t]);
                if (!(lhs == rhs)) {
                    rep.ok = false;
                    rep.witness = "element " + eg->group().element_name(g) + " at level " + std::to_string(n);
                    return rep;
                }
            }
    return rep;
}

// ------------------------------------------------ cocycle-based map sampling

namespace {

// normalized cells of the truncated EG or product; ids are sset-encoded
struct CellComplex {
    std::vector<std::vector<long>> cells;
    std::vector<std::map<long, int>> index;
};

struct SSet {
    int top = 0;
    std::function<long(int)> size;
    std::function<long(int, int, long)> face;
    std::function<long(int, int, long)> degeneracy;
    std::function<long(int, int, long)> act;  // (g, level, idx)
};

bool sset_degenerate(const SSet& x, int level, long idx) {
    if (level == 0) return false;
    for (int j = 0; j < level; ++j)
        if (x.degeneracy(level - 1, j, x.face(level, j, idx)) == idx) return true;
    return false;
}

long sset_subface(const SSet& x, int level, long idx, uint32_t vertex_set) {
    long cur = idx;
    int curlevel = level;
    for (int p = level; p >= 0; --p) {
        if (vertex_set & (1u << p)) continue;
        cur = x.face(curlevel, p, cur);
        --curlevel;
    }
    return cur;
}

CellComplex build_cells(const SSet& x) {
    CellComplex c;
    c.cells.resize(x.top + 1);
    c.index.resize(x.top + 1);
    for (int k = 0; k <= x.top; ++k)
        for (long idx = 0; idx < x.size(k); ++idx)
            if (!sset_degenerate(x, k, idx)) {
                c.index[k][idx] = int(c.cells[k].size());
                c.cells[k].push_back(idx);
            }
    return c;
}

// tensor chart of L ⊗ C(X) in one tensor degree
struct XChart {
    int tensor_degree = 0;
    std::vector<std::pair<BasisRef, int>> pairs;  // (x, cell position at level |x|-d)
    std::map<std::pair<BasisRef, int>, int> index;

    static XChart build(const SLAlgebra& l, const CellComplex& cells, int d, int top) {
        XChart t;
        t.tensor_degree = d;
        for (int deg : l.carrier().degrees()) {
            int k = deg - d;
            if (k < 0 || k > top) continue;
            for (int i = 0; i < l.carrier().dim(deg); ++i)
                for (int c = 0; c < int(cells.cells[k].size()); ++c) {
                    t.index[{{deg, i}, c}] = int(t.pairs.size());
                    t.pairs.push_back({{deg, i}, c});
                }
        }
        return t;
    }
};

QVec x_differential(const SLAlgebra& l, const SSet& x, const CellComplex& cells, const XChart& from,
                    const XChart& to, const QVec& z) {
    QVec out(to.pairs.size());
    for (int p = 0; p < int(from.pairs.size()); ++p) {
        if (z[p] == 0) continue;
        auto [xb, c] = from.pairs[p];
        int k = xb.degree - from.tensor_degree;
        GradedVec l1 = l.eval_basis({xb});
        for (int yi = 0; yi < int(l1.coords.size()); ++yi) {
            if (l1.coords[yi] == 0) continue;
            auto it = to.index.find({{l1.degree, yi}, c});
            if (it != to.index.end()) out[it->second] += z[p] * l1.coords[yi];
        }
        if (k + 1 <= x.top) {
            Rat sgn = (xb.degree & 1) ? -1 : 1;
            long cid = cells.cells[k][c];
            // coboundary: all nondegenerate (k+1)-cells having cid as a face
            for (int up = 0; up < int(cells.cells[k + 1].size()); ++up) {
                long uid = cells.cells[k + 1][up];
                for (int i = 0; i <= k + 1; ++i) {
                    if (x.face(k + 1, i, uid) != cid) continue;
                    auto it = to.index.find({xb, up});
                    if (it != to.index.end()) out[it->second] += z[p] * ((i & 1) ? -sgn : sgn);
                }
            }
        }
    }
    return out;
}

// U(g) = ρ(g) ⊗ (cell g-translation); invariant cocycles are its fixed points
QVec x_group_apply(const SLAlgebra& l, const GroupRep& rep, const SSet& x, const CellComplex& cells,
                   const XChart& chart, int g, const QVec& z) {
    QVec out(chart.pairs.size());
    for (int p = 0; p < int(chart.pairs.size()); ++p) {
        if (z[p] == 0) continue;
        auto [xb, c] = chart.pairs[p];
        int k = xb.degree - chart.tensor_degree;
        long moved = x.act(g, k, cells.cells[k][c]);
        int mpos = cells.index[k].at(moved);
        const QMatrix* b = rep.matrix(g).block(xb.degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(xb.degree));
        for (int yi = 0; yi < b->rows(); ++yi) {
            if (b->at(yi, xb.index) == 0) continue;
            out[chart.index.at({{xb.degree, yi}, mpos})] += z[p] * b->at(yi, xb.index);
        }
    }
    return out;
    (void)l;
}

// Invariant degree-0 cocycles sampled as symmetrized coboundaries.
std::vector<QVec> sample_invariant_cocycles(const SLAlgebra& l, const GroupRep& rep, const SSet& x,
                                            const CellComplex& cells, const XChart& chart0, int count,
                                            unsigned seed) {
    XChart chart1 = XChart::build(l, cells, +1, x.top);
    XChart chartm1 = XChart::build(l, cells, -1, x.top);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coin(-2, 2);
    std::vector<QVec> out;
    int attempts = 0;
    while (int(out.size()) < count && ++attempts < count * 8) {
        QVec w(chart1.pairs.size());
        for (auto& e : w) e = coin(rng);
        QVec z = x_differential(l, x, cells, chart1, chart0, w);
        QVec avg(chart0.pairs.size());
        for (int g = 0; g < rep.group().order(); ++g) avg += x_group_apply(l, rep, x, cells, chart0, g, z);
        Rat inv_order = Rat(1) / rep.group().order();
        for (auto& e : avg) e *= inv_order;
        if (!is_zero(x_differential(l, x, cells, chart0, chartm1, avg)))
            throw StructuralError("sampled cochain is not a cocycle");
        if (is_zero(avg) && !out.empty()) continue;
        out.push_back(std::move(avg));
    }
    while (int(out.size()) < count) out.push_back(QVec(chart0.pairs.size()));
    return out;
}

// f_z(t) in ambient coordinates of M_level, then expressed in the cycle basis
QVec map_value_from_cocycle(const SLAlgebra& l, const SimplicialQModule& m, const SSet& x,
                            const CellComplex& cells, const XChart& chart0, const QVec& z, int level,
                            long idx) {
    const auto& amb = m.ambient[level];
    QVec v(amb.pairs.size());
    for (int p = 0; p < int(amb.pairs.size()); ++p) {
        auto [xb, s] = amb.pairs[p];
        int k = xb.degree;  // cell dimension of s (|s| = k+1, tensor degree 0)
        long sub = sset_subface(x, level, idx, s);
        auto it = cells.index[k].find(sub);
        if (it == cells.index[k].end()) continue;  // degenerate cell pulls back to zero
        auto zt = chart0.index.find({xb, it->second});
        if (zt != chart0.index.end()) v[p] = z[zt->second];
    }
    auto coords = m.express(level, v);
    if (!coords) throw StructuralError("sampled map value is not a cycle");
    (void)l;
    return *coords;
}

SSet eg_sset(const EGComplex& eg) {
    SSet x;
    x.top = eg.m_max();
    x.size = [&eg](int n) { return eg.level_size(n); };
    x.face = [&eg](int level, int i, long idx) { return eg.face(level, i, idx); };
    x.degeneracy = [&eg](int level, int j, long idx) { return eg.degeneracy(level, j, idx); };
    x.act = [&eg](int g, int level, long idx) { return eg.act(g, level, idx); };
    return x;
}

// monotone maps [m] -> [n] in lexicographic order
std::vector<std::vector<int>> monotone_seqs(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m + 1, 0);
    while (true) {
        out.push_back(cur);
        int p = m;
        while (p >= 0 && cur[p] == n) --p;
        if (p < 0) break;
        ++cur[p];
        for (int q = p + 1; q <= m; ++q) cur[q] = cur[p];
    }
    return out;
}

}  // namespace

std::vector<GSimplicialMap> sample_equivariant_maps(const EGComplex& eg, const SimplicialQModule& m,
                                                    int count, unsigned seed) {
    if (!m.source || !m.source_action)
        throw SchemaError("sampling needs a model built with its group action installed");
    const SLAlgebra& l = *m.source;
    const GroupRep& rep = *m.source_action;
    if (!rep.homomorphism_ok()) throw StructuralError("map sampling needs an honest group action");
    SSet x = eg_sset(eg);
    CellComplex cells = build_cells(x);
    XChart chart0 = XChart::build(l, cells, 0, x.top);
    std::vector<QVec> zs = sample_invariant_cocycles(l, rep, x, cells, chart0, count, seed);

    std::vector<GSimplicialMap> out;
    for (const QVec& z : zs) {
        GSimplicialMap f;
        f.eg = &eg;
        f.m = &m;
        f.values.resize(eg.m_max() + 1);
        for (int n = 0; n <= eg.m_max(); ++n) {
            f.values[n].resize(eg.level_size(n));
            for (long t = 0; t < eg.level_size(n); ++t)
                f.values[n][t] = map_value_from_cocycle(l, m, x, cells, chart0, z, n, t);
        }
        out.push_back(std::move(f));
    }
    return out;
}

GSimplicialMap averaged_symmetrization(const GSimplicialMap& f) {
    const EGComplex& eg = *f.eg;
    int order = eg.group().order();
    GSimplicialMap out;
    out.eg = f.eg;
    out.m = f.m;
    out.values.resize(eg.m_max() + 1);
    Rat inv_order = Rat(1) / order;
    for (int n = 0; n <= eg.m_max(); ++n) {
        QVec avg(f.m->dim(n));
        for (int sigma = 0; sigma < order; ++sigma) {
            std::vector<int> t(n + 1, 0);
            t[0] = sigma;
            avg += f.at(n, eg.encode(t));
        }
        for (auto& e : avg) e *= inv_order;
        out.values[n].assign(eg.level_size(n), avg);
    }
    return out;
}

// ---------------------------------------------------------------- CylinderMap

namespace {

// H((g_m,...,g_0), k zeros): k = 0 is f itself, otherwise the σ-average of f
// on the tuple with its k rightmost entries replaced by (σ, e, ..., e).
QVec h_value(const GSimplicialMap& f, int level, long idx, int zeros) {
    const EGComplex& eg = *f.eg;
    if (zeros == 0) return f.at(level, idx);
    std::vector<int> t = eg.decode(level, idx);
    int keep = level + 1 - zeros;  // entries g_m..g_k
    QVec avg(f.m->dim(level));
    for (int sigma = 0; sigma < eg.group().order(); ++sigma) {
        std::vector<int> u(t.begin(), t.begin() + keep);
        u.push_back(sigma);
        u.resize(level + 1, 0);
        avg += f.at(level, eg.encode(u));
    }
    Rat inv_order = Rat(1) / eg.group().order();
    for (auto& e : avg) e *= inv_order;
    return avg;
}

int delta1_face_zeros(int zeros, int i) { return (i < zeros) ? zeros - 1 : zeros; }
int delta1_degeneracy_zeros(int zeros, int j) { return (j < zeros) ? zeros + 1 : zeros; }

}  // namespace

CylinderMap homotopy_h(const GSimplicialMap& f) {
    const EGComplex& eg = *f.eg;
    CylinderMap h;
    h.eg = f.eg;
    h.m = f.m;
    h.values.resize(eg.m_max() + 1);
    for (int n = 0; n <= eg.m_max(); ++n) {
        h.values[n].resize(eg.level_size(n));
        for (long t = 0; t < eg.level_size(n); ++t) {
            h.values[n][t].resize(n + 2);
            for (int k = 0; k <= n + 1; ++k) h.values[n][t][k] = h_value(f, n, t, k);
        }
    }
    return h;
}

IdentityReport CylinderMap::verify_simplicial() const {
    IdentityReport rep;
    for (int n = 1; n <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int k = 0; k <= n + 1; ++k)
                for (int i = 0; i <= n; ++i) {
                    ++rep.checks;
                    QVec lhs = m->faces[n][i].apply(values[n][t][k]);
                    QVec rhs = values[n - 1][eg->face(n, i, t)][delta1_face_zeros(k, i)];
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "H fails d_" + std::to_string(i) + " at level " + std::to_string(n) +
                                      ", zeros " + std::to_string(k);
                        return rep;
                    }
                }
    for (int n = 0; n + 1 <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int k = 0; k <= n + 1; ++k)
                for (int j = 0; j <= n; ++j) {
                    ++rep.checks;
                    QVec lhs = m->degens[n][j].apply(values[n][t][k]);
                    QVec rhs = values[n + 1][eg->degeneracy(n, j, t)][delta1_degeneracy_zeros(k, j)];
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "H fails s_" + std::to_string(j) + " at level " + std::to_string(n) +
                                      ", zeros " + std::to_string(k);
                        return rep;
                    }
                }
    return rep;
}

IdentityReport CylinderMap::verify_equivariant() const {
    IdentityReport rep;
    for (int n = 0; n <= eg->m_max(); ++n)
        for (long t = 0; t < eg->level_size(n); ++t)
            for (int k = 0; k <= n + 1; ++k)
                for (int g = 0; g < eg->group().order(); ++g) {
                    ++rep.checks;
                    QVec lhs = values[n][eg->act(g, n, t)][k];
                    QVec rhs = m->action.empty() ? values[n][t][k] : m->action[g][n].apply(values[n][t][k]);
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "H fails equivariance for " + eg->group().element_name(g) + " at level " +
                                      std::to_string(n) + ", zeros " + std::to_string(k);
                        return rep;
                    }
                }
    return rep;
}

IdentityReport verify_h_endpoints(const CylinderMap& h, const GSimplicialMap& f) {
    IdentityReport rep;
    GSimplicialMap favg = averaged_symmetrization(f);
    for (int n = 0; n <= f.eg->m_max(); ++n)
        for (long t = 0; t < f.eg->level_size(n); ++t) {
            ++rep.checks;
            if (!(h.values[n][t][0] == f.at(n, t))) {
                rep.ok = false;
                rep.witness = "H(-,1) != f at level " + std::to_string(n);
                return rep;
            }
            ++rep.checks;
            if (!(h.values[n][t][n + 1] == favg.at(n, t))) {
                rep.ok = false;
                rep.witness = "H(-,0) != f^Σ at level " + std::to_string(n);
                return rep;
            }
        }
    return rep;
}

// ------------------------------------------------------------------ MapSimplex

MapSimplex MapSimplex::empty(int n, const EGComplex& eg, const SimplicialQModule& m) {
    MapSimplex f;
    f.n = n;
    f.eg = &eg;
    f.m = &m;
    for (int level = 0; level <= eg.m_max(); ++level) {
        f.sigmas.push_back(monotone_seqs(level, n));
        std::map<std::vector<int>, int> ix;
        for (int i = 0; i < int(f.sigmas[level].size()); ++i) ix[f.sigmas[level][i]] = i;
        f.sigma_index.push_back(std::move(ix));
        f.values.push_back(std::vector<std::vector<QVec>>(f.sigmas[level].size(),
                                                          std::vector<QVec>(eg.level_size(level))));
    }
    return f;
}

IdentityReport MapSimplex::verify_simplicial() const {
    IdentityReport rep;
    for (int level = 1; level <= eg->m_max(); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s)
            for (long t = 0; t < eg->level_size(level); ++t)
                for (int i = 0; i <= level; ++i) {
                    ++rep.checks;
                    std::vector<int> sf = sigmas[level][s];
                    sf.erase(sf.begin() + i);
                    QVec lhs = m->faces[level][i].apply(values[level][s][t]);
                    QVec rhs = values[level - 1][sigma_index[level - 1].at(sf)][eg->face(level, i, t)];
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "map simplex fails d_" + std::to_string(i) + " at level " +
                                      std::to_string(level);
                        return rep;
                    }
                }
    for (int level = 0; level + 1 <= eg->m_max(); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s)
            for (long t = 0; t < eg->level_size(level); ++t)
                for (int j = 0; j <= level; ++j) {
                    ++rep.checks;
                    std::vector<int> sd = sigmas[level][s];
                    sd.insert(sd.begin() + j, sd[j]);
                    QVec lhs = m->degens[level][j].apply(values[level][s][t]);
                    QVec rhs = values[level + 1][sigma_index[level + 1].at(sd)][eg->degeneracy(level, j, t)];
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "map simplex fails s_" + std::to_string(j) + " at level " +
                                      std::to_string(level);
                        return rep;
                    }
                }
    return rep;
}

IdentityReport MapSimplex::verify_equivariant() const {
    IdentityReport rep;
    for (int level = 0; level <= eg->m_max(); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s)
            for (long t = 0; t < eg->level_size(level); ++t)
                for (int g = 0; g < eg->group().order(); ++g) {
                    ++rep.checks;
                    QVec lhs = values[level][s][eg->act(g, level, t)];
                    QVec rhs = m->action.empty() ? values[level][s][t]
                                                 : m->action[g][level].apply(values[level][s][t]);
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.witness = "map simplex fails equivariance for " + eg->group().element_name(g) +
                                      " at level " + std::to_string(level);
                        return rep;
                    }
                }
    return rep;
}

std::vector<MapSimplex> sample_map_simplices(int n, const EGComplex& eg, const SimplicialQModule& m,
                                             int count, unsigned seed) {
    if (!m.source || !m.source_action)
        throw SchemaError("sampling needs a model built with its group action installed");
    const SLAlgebra& l = *m.source;
    const GroupRep& rep = *m.source_action;
    if (!rep.homomorphism_ok()) throw StructuralError("map sampling needs an honest group action");

    MapSimplex proto = MapSimplex::empty(n, eg, m);
    // Δ^n × EG as one simplicial set; pairs encoded σ * |EG_level| + t
    SSet x;
    x.top = eg.m_max();
    const auto& sigmas = proto.sigmas;
    const auto& sigma_index = proto.sigma_index;
    x.size = [&eg, &sigmas](int level) { return long(sigmas[level].size()) * eg.level_size(level); };
    x.face = [&eg, &sigmas, &sigma_index](int level, int i, long idx) {
        long t = idx % eg.level_size(level);
        int s = int(idx / eg.level_size(level));
        std::vector<int> sf = sigmas[level][s];
        sf.erase(sf.begin() + i);
        return long(sigma_index[level - 1].at(sf)) * eg.level_size(level - 1) + eg.face(level, i, t);
    };
    x.degeneracy = [&eg, &sigmas, &sigma_index](int level, int j, long idx) {
        long t = idx % eg.level_size(level);
        int s = int(idx / eg.level_size(level));
        std::vector<int> sd = sigmas[level][s];
        sd.insert(sd.begin() + j, sd[j]);
        return long(sigma_index[level + 1].at(sd)) * eg.level_size(level + 1) + eg.degeneracy(level, j, t);
    };
    x.act = [&eg](int g, int level, long idx) {
        long t = idx % eg.level_size(level);
        long s = idx / eg.level_size(level);
        return s * eg.level_size(level) + eg.act(g, level, t);
    };

    CellComplex cells = build_cells(x);
    XChart chart0 = XChart::build(l, cells, 0, x.top);
    std::vector<QVec> zs = sample_invariant_cocycles(l, rep, x, cells, chart0, count, seed);

    std::vector<MapSimplex> out;
    for (const QVec& z : zs) {
        MapSimplex f = proto;
        for (int level = 0; level <= eg.m_max(); ++level)
            for (int s = 0; s < int(f.sigmas[level].size()); ++s)
                for (long t = 0; t < eg.level_size(level); ++t) {
                    long idx = long(s) * eg.level_size(level) + t;
                    f.values[level][s][t] = map_value_from_cocycle(l, m, x, cells, chart0, z, level, idx);
                }
        out.push_back(std::move(f));
    }
    return out;
}

// ------------------------------------------------------------ retraction p, i

IdentityReport DeltaMapSimplex::verify_simplicial() const {
    IdentityReport rep;
    for (int level = 1; level < int(sigmas.size()); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s)
            for (int i = 0; i <= level; ++i) {
                ++rep.checks;
                std::vector<int> sf = sigmas[level][s];
                sf.erase(sf.begin() + i);
                if (!(m->faces[level][i].apply(values[level][s]) ==
                      values[level - 1][sigma_index[level - 1].at(sf)])) {
                    rep.ok = false;
                    rep.witness = "p(f) fails d_" + std::to_string(i) + " at level " + std::to_string(level);
                    return rep;
                }
            }
    for (int level = 0; level + 1 < int(sigmas.size()); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s)
            for (int j = 0; j <= level; ++j) {
                ++rep.checks;
                std::vector<int> sd = sigmas[level][s];
                sd.insert(sd.begin() + j, sd[j]);
                if (!(m->degens[level][j].apply(values[level][s]) ==
                      values[level + 1][sigma_index[level + 1].at(sd)])) {
                    rep.ok = false;
                    rep.witness = "p(f) fails s_" + std::to_string(j) + " at level " + std::to_string(level);
                    return rep;
                }
            }
    return rep;
}

IdentityReport DeltaMapSimplex::verify_invariant() const {
    IdentityReport rep;
    for (int level = 0; level < int(sigmas.size()); ++level)
        for (int s = 0; s < int(sigmas[level].size()); ++s) {
            ++rep.checks;
            if (!m->invariant(level, values[level][s])) {
                rep.ok = false;
                rep.witness = "p(f) value not invariant at level " + std::to_string(level);
                return rep;
            }
        }
    return rep;
}

DeltaMapSimplex retraction_p(const MapSimplex& f) {
    IdentityReport eq = f.verify_equivariant();
    if (!eq.ok) throw StructuralError("retraction refused: input is not equivariant (" + eq.witness + ")");
    const EGComplex& eg = *f.eg;
    DeltaMapSimplex p;
    p.n = f.n;
    p.m = f.m;
    p.sigmas = f.sigmas;
    p.sigma_index = f.sigma_index;
    p.values.resize(f.sigmas.size());
    Rat inv_order = Rat(1) / eg.group().order();
    for (int level = 0; level < int(f.sigmas.size()); ++level) {
        p.values[level].resize(f.sigmas[level].size());
        for (int s = 0; s < int(f.sigmas[level].size()); ++s) {
            QVec avg(f.m->dim(level));
            for (int g = 0; g < eg.group().order(); ++g) {
                std::vector<int> t(level + 1, 0);
                t[0] = g;
                avg += f.at(level, s, eg.encode(t));
            }
            for (auto& e : avg) e *= inv_order;
            p.values[level][s] = std::move(avg);
        }
    }
    return p;
}

MapSimplex inclusion_i(const DeltaMapSimplex& h, const EGComplex& eg) {
    MapSimplex f = MapSimplex::empty(h.n, eg, *h.m);
    for (int level = 0; level <= eg.m_max(); ++level)
        for (int s = 0; s < int(f.sigmas[level].size()); ++s)
            for (long t = 0; t < eg.level_size(level); ++t) f.values[level][s][t] = h.values[level][s];
    return f;
}

// ------------------------------------------------------------------ K homotopy

MapSimplex homotopy_k(const MapSimplex& f, int tau_zeros) {
    if (tau_zeros < 0 || tau_zeros > f.n + 1) throw SchemaError("Δ¹ simplex out of range");
    const EGComplex& eg = *f.eg;
    MapSimplex k = MapSimplex::empty(f.n, eg, *f.m);
    Rat inv_order = Rat(1) / eg.group().order();
    for (int level = 0; level <= eg.m_max(); ++level)
        for (int s = 0; s < int(f.sigmas[level].size()); ++s) {
            // σ*τ has one zero per vertex of σ below tau_zeros
            int zeros = 0;
            for (int v : f.sigmas[level][s])
                if (v < tau_zeros) ++zeros;
            for (long t = 0; t < eg.level_size(level); ++t) {
                if (zeros == 0) {
                    k.values[level][s][t] = f.at(level, s, t);
                    continue;
                }
                std::vector<int> tup = eg.decode(level, t);
                int keep = level + 1 - zeros;
                QVec avg(f.m->dim(level));
                for (int sigma = 0; sigma < eg.group().order(); ++sigma) {
                    std::vector<int> u(tup.begin(), tup.begin() + keep);
                    u.push_back(sigma);
                    u.resize(level + 1, 0);
                    avg += f.at(level, s, eg.encode(u));
                }
                for (auto& e : avg) e *= inv_order;
                k.values[level][s][t] = std::move(avg);
            }
        }
    return k;
}

MapSimplex map_simplex_face(const MapSimplex& f, int i) {
    MapSimplex out = MapSimplex::empty(f.n - 1, *f.eg, *f.m);
    for (int level = 0; level <= f.eg->m_max(); ++level)
        for (int s = 0; s < int(out.sigmas[level].size()); ++s) {
            std::vector<int> composed(out.sigmas[level][s]);
            for (int& v : composed) v = (v < i) ? v : v + 1;  // δ^i ∘ σ
            int src = f.sigma_index[level].at(composed);
            out.values[level][s] = f.values[level][src];
        }
    return out;
}

MapSimplex map_simplex_degeneracy(const MapSimplex& f, int j) {
    MapSimplex out = MapSimplex::empty(f.n + 1, *f.eg, *f.m);
    for (int level = 0; level <= f.eg->m_max(); ++level)
        for (int s = 0; s < int(out.sigmas[level].size()); ++s) {
            std::vector<int> composed(out.sigmas[level][s]);
            for (int& v : composed) v = (v <= j) ? std::min(v, j) : v - 1;  // σ^j ∘ σ
            int src = f.sigma_index[level].at(composed);
            out.values[level][s] = f.values[level][src];
        }
    return out;
}

// ------------------------------------------------------------- the full suite

std::vector<SuiteLine> verify_retraction(const FiniteGroup& g, const SLAlgebra& target,
                                         const GroupRep* target_action, const RetractionOptions& opt) {
    std::vector<SuiteLine> lines;
    auto push = [&](const std::string& name, const IdentityReport& r) {
        lines.push_back({name, r.ok, r.checks, r.witness});
    };

    EGComplex eg(g, opt.m_max, opt.max_cells);
    push("eg-simplicial-identities", eg.verify_identities());
    push("eg-freeness", eg.verify_freeness());

    GroupRep rep = target_action ? *target_action : GroupRep::trivial(g, target.carrier());
    SimplicialQModule m = abelian_mc_model(target, opt.m_max, &rep);
    m.source = target;
    m.source_action = rep;
    push("mc-model-identities", m.verify_identities());

    auto fs = sample_equivariant_maps(eg, m, opt.samples, opt.seed);
    {
        IdentityReport valid;
        for (const auto& f : fs) {
            valid.merge(f.verify_simplicial());
            valid.merge(f.verify_equivariant());
        }
        push("sampled-maps-valid", valid);
    }
    {
        IdentityReport sym;
        for (const auto& f : fs) {
            GSimplicialMap favg = averaged_symmetrization(f);
            sym.merge(favg.verify_simplicial());
            sym.merge(favg.verify_equivariant());
        }
        push("symmetrization-valid", sym);
    }
    {
        IdentityReport hsimp, heq, hend;
        bool faulted = false;
        for (const auto& f : fs) {
            CylinderMap h = homotopy_h(f);
            if (opt.inject_h_fault && !faulted) {
                // flip the sign of one interior value to demonstrate detection
                for (int n = eg.m_max(); n >= 1 && !faulted; --n)
                    for (long t = 0; t < eg.level_size(n) && !faulted; ++t)
                        for (int k = 1; k <= n && !faulted; ++k)
                            if (!is_zero(h.values[n][t][k])) {
                                h.values[n][t][k] = Rat(-1) * h.values[n][t][k];
                                faulted = true;
                            }
            }
            hsimp.merge(h.verify_simplicial());
            heq.merge(h.verify_equivariant());
            hend.merge(verify_h_endpoints(h, f));
        }
        if (opt.inject_h_fault && !faulted) {
            IdentityReport r;
            r.ok = false;
            r.witness = "fault injection found no nonzero H value to corrupt";
            hsimp.merge(r);
        }
        push("h-simplicial", hsimp);
        push("h-equivariant", heq);
        push("h-endpoints", hend);
    }

    for (int n = 0; n <= opt.map_simplex_dim; ++n) {
        auto mf = sample_map_simplices(n, eg, m, std::max(1, opt.samples - 1), opt.seed + 101 * (n + 1));
        IdentityReport valid, psuite, pi_id, kend, knat;
        for (const auto& f : mf) {
            valid.merge(f.verify_simplicial());
            valid.merge(f.verify_equivariant());

            DeltaMapSimplex p = retraction_p(f);
            psuite.merge(p.verify_simplicial());
            psuite.merge(p.verify_invariant());

            // p ∘ i = id on the invariant simplex p(f)
            MapSimplex included = inclusion_i(p, eg);
            valid.merge(included.verify_simplicial());
            valid.merge(included.verify_equivariant());
            DeltaMapSimplex back = retraction_p(included);
            ++pi_id.checks;
            if (!(back == p)) {
                pi_id.ok = false;
                pi_id.witness = "p(i(h)) != h at n = " + std::to_string(n);
            }

            for (int tz = 0; tz <= n + 1; ++tz) {
                MapSimplex k = homotopy_k(f, tz);
                valid.merge(k.verify_simplicial());
                valid.merge(k.verify_equivariant());
                if (tz == 0) {
                    ++kend.checks;
                    if (!(k == f)) {
                        kend.ok = false;
                        kend.witness = "K(-,1) != id at n = " + std::to_string(n);
                    }
                }
                if (tz == n + 1) {
                    ++kend.checks;
                    if (!(k == included) && !(k == inclusion_i(retraction_p(f), eg))) {
                        kend.ok = false;
                        kend.witness = "K(-,0) != i∘p at n = " + std::to_string(n);
                    }
                }
                // simplicial in the Δ¹ coordinate jointly with the simplex
                if (n >= 1)
                    for (int i = 0; i <= n; ++i) {
                        ++knat.checks;
                        MapSimplex lhs = map_simplex_face(k, i);
                        MapSimplex rhs = homotopy_k(map_simplex_face(f, i), delta1_face_zeros(tz, i));
                        if (!(lhs == rhs)) {
                            knat.ok = false;
                            knat.witness = "K does not commute with d_" + std::to_string(i) + " at n = " +
                                           std::to_string(n);
                        }
                    }
                if (n + 1 <= opt.map_simplex_dim)
                    for (int j = 0; j <= n; ++j) {
                        ++knat.checks;
                        MapSimplex lhs = map_simplex_degeneracy(k, j);
                        MapSimplex rhs = homotopy_k(map_simplex_degeneracy(f, j), delta1_degeneracy_zeros(tz, j));
                        if (!(lhs == rhs)) {
                            knat.ok = false;
                            knat.witness = "K does not commute with s_" + std::to_string(j) + " at n = " +
                                           std::to_string(n);
                        }
                    }
            }
        }
        std::string tag = "n" + std::to_string(n);
        push("map-simplices-valid-" + tag, valid);
        push("p-simplicial-invariant-" + tag, psuite);
        push("p-i-identity-" + tag, pi_id);
        push("k-endpoints-" + tag, kend);
        if (n >= 1) push("k-naturality-" + tag, knat);
    }
    return lines;
}

}  // namespace mcfix

#include "mcfix/group.hpp"

#include <algorithm>
#include <numeric>

namespace mcfix {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    int n = int(table_.size());
    if (n == 0) throw SchemaError("empty group table");
    for (const auto& row : table_) {
        if (int(row.size()) != n) throw SchemaError("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw SchemaError("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw SchemaError("element 0 is not an identity of the group table");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0 && table_[b][a] == 0) { inv_[a] = b; break; }
        if (inv_[a] < 0) throw SchemaError("group table element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw SchemaError("group table is not associative");
    names_.resize(n);
    for (int g = 0; g < n; ++g) names_[g] = "g" + std::to_string(g);
    names_[0] = "e";
}

void FiniteGroup::set_element_names(std::vector<std::string> names) {
    if (int(names.size()) != order()) throw SchemaError("element name count mismatch");
    names_ = std::move(names);
}

FiniteGroup FiniteGroup::cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    FiniteGroup g(std::move(t));
    std::vector<std::string> names(n);
    names[0] = "e";
    for (int k = 1; k < n; ++k) names[k] = k == 1 ? "r" : "r" + std::to_string(k);
    g.set_element_names(std::move(names));
    return g;
}

namespace {

std::vector<std::vector<int>> permutations_of(int m) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    // identity is already first in lexicographic order
    return all;
}

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(int m) {
    if (m < 1 || m > 5) throw SchemaError("symmetric group preset supports 1 <= m <= 5");
    auto perms = permutations_of(m);
    int n = int(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> c(m);
            for (int i = 0; i < m; ++i) c[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
            t[a][b] = index[c];
        }
    FiniteGroup g(std::move(t));
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        std::string s = "(";
        for (int v : perms[i]) s += std::to_string(v + 1);
        s += ")";
        names[i] = s;
    }
    names[0] = "e";
    g.set_element_names(std::move(names));
    return g;
}

std::optional<std::vector<int>> FiniteGroup::sign_character() const {
    int n = order();
    // S_m preset: recompute signs from the table by factorial order match.
    for (int m = 2; m <= 5; ++m) {
        int fact = 1;
        for (int k = 2; k <= m; ++k) fact *= k;
        if (fact != n) continue;
        FiniteGroup sm = symmetric(m);
        if (sm.table() == table_) {
            auto perms = permutations_of(m);
            std::vector<int> chi(n);
            for (int i = 0; i < n; ++i) chi[i] = perm_sign(perms[i]);
            return chi;
        }
    }
    // Cyclic of even order: g^k -> (-1)^k.
    if (n % 2 == 0 && cyclic(n).table() == table_) {
        std::vector<int> chi(n);
        for (int k = 0; k < n; ++k) chi[k] = (k % 2 == 0) ? 1 : -1;
        return chi;
    }
    if (n == 1 || cyclic(n).table() == table_) {
        return std::vector<int>(n, 1);  // only the trivial character lands in {±1}... keep trivial
    }
    return std::nullopt;
}

GroupRep::GroupRep(FiniteGroup group, GradedModule carrier, std::vector<LinearMap> matrices)
    : group_(std::move(group)), carrier_(std::move(carrier)), mats_(std::move(matrices)) {
    if (int(mats_.size()) != group_.order())
        throw SchemaError("representation needs one matrix family per group element");
    for (int g = 0; g < group_.order(); ++g)
        check_map_shapes(mats_[g], carrier_, carrier_, "action of element " + std::to_string(g));
    // exact homomorphism check
    homomorphism_ok_ = true;
    for (int n : carrier_.degrees()) {
        const QMatrix* e = mats_[0].block(n);
        if (!e || !e->is_identity()) { homomorphism_ok_ = false; break; }
    }
    if (homomorphism_ok_) {
        for (int a = 0; a < group_.order() && homomorphism_ok_; ++a)
            for (int b = 0; b < group_.order() && homomorphism_ok_; ++b)
                for (int n : carrier_.degrees()) {
                    const QMatrix* ma = mats_[a].block(n);
                    const QMatrix* mb = mats_[b].block(n);
                    const QMatrix* mab = mats_[group_.mul(a, b)].block(n);
                    if (!ma || !mb || !mab) { homomorphism_ok_ = false; break; }
                    if (!((*ma) * (*mb) == *mab)) { homomorphism_ok_ = false; break; }
                }
    }
}

GroupRep GroupRep::trivial(FiniteGroup group, const GradedModule& carrier) {
    std::vector<LinearMap> mats(group.order(), LinearMap::identity(carrier));
    return GroupRep(std::move(group), carrier, std::move(mats));
}

GroupRep GroupRep::from_generators(FiniteGroup group, GradedModule carrier,
                                   const std::map<int, LinearMap>& images) {
    int n = group.order();
    std::vector<LinearMap> mats(n);
    std::vector<bool> known(n, false);
    mats[0] = LinearMap::identity(carrier);
    known[0] = true;
    for (const auto& [g, img] : images) {
        if (g < 0 || g >= n) throw SchemaError("action generator index out of range");
        mats[g] = img;
        known[g] = true;
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (int g = 0; g < n; ++g) {
            if (!known[g]) continue;
            for (const auto& [s, img] : images) {
                int gs = group.mul(g, s);
                if (known[gs]) continue;
                LinearMap prod(0);
                for (int deg : carrier.degrees()) {
                    const QMatrix* a = mats[g].block(deg);
                    const QMatrix* b = img.block(deg);
                    if (a && b) prod.set_block(deg, (*a) * (*b));
                }
                mats[gs] = std::move(prod);
                known[gs] = true;
                grew = true;
            }
        }
    }
    if (!std::all_of(known.begin(), known.end(), [](bool b) { return b; }))
        throw SchemaError("action generators do not generate the group");
    return GroupRep(std::move(group), std::move(carrier), std::move(mats));
}

QMatrix GroupRep::reynolds(int degree) const {
    if (!homomorphism_ok_)
        throw StructuralError("reynolds operator requires a valid group homomorphism");
    int d = carrier_.dim(degree);
    QMatrix p(d, d);
    for (int g = 0; g < group_.order(); ++g) {
        const QMatrix* b = mats_[g].block(degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(degree));
        p = p + *b;
    }
    return p * (Rat(1) / group_.order());
}

std::vector<QVec> fixed_space(const std::vector<QMatrix>& mats, int dim) {
    if (dim == 0) return {};
    int nontrivial = 0;
    for (const auto& m : mats)
        if (!m.is_identity()) ++nontrivial;
    if (nontrivial == 0) {
        std::vector<QVec> all;
        for (int i = 0; i < dim; ++i) {
            QVec e(dim);
            e[i] = 1;
            all.push_back(std::move(e));
        }
        return all;
    }
    QMatrix stack(nontrivial * dim, dim);
    int r = 0;
    for (const auto& m : mats) {
        if (m.is_identity()) continue;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) stack.at(r + i, j) = m.at(i, j) - (i == j ? 1 : 0);
        r += dim;
    }
    return kernel_basis(stack);
}

std::vector<QVec> GroupRep::invariants(int degree) const {
    int d = carrier_.dim(degree);
    if (d == 0) return {};
    std::vector<QMatrix> mats;
    for (int g = 1; g < group_.order(); ++g) {
        const QMatrix* b = mats_[g].block(degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(degree));
        mats.push_back(*b);
    }
    return fixed_space(mats, d);
}

std::vector<QVec> GroupRep::invariants_within(int degree, const std::vector<QVec>& subspace) const {
    // Fixed vectors of the action restricted to span(subspace); the action
    // must map that span into itself.
    if (subspace.empty()) return {};
    int amb = carrier_.dim(degree);
    QMatrix s = QMatrix::from_columns(subspace, amb);
    std::vector<QMatrix> restricted;
    for (int g = 1; g < group_.order(); ++g) {
        const QMatrix* b = mats_[g].block(degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(degree));
        std::vector<QVec> images;
        for (const QVec& v : subspace) images.push_back(b->apply(v));
        auto coords = coordinates_in_span(s, images);
        if (!coords) throw StructuralError("action does not preserve the given subspace");
        restricted.push_back(QMatrix::from_columns(*coords, int(subspace.size())));
    }
    auto fixed = fixed_space(restricted, int(subspace.size()));
    std::vector<QVec> out;
    for (const QVec& c : fixed) {
        QVec v(amb);
        for (size_t i = 0; i < c.size(); ++i) axpy(v, c[i], subspace[i]);
        out.push_back(std::move(v));
    }
    return out;
}

GroupRep::Coinvariants GroupRep::coinvariants(int degree) const {
    int d = carrier_.dim(degree);
    Coinvariants out;
    if (d == 0) return out;
    SpanBuilder relations(d);
    for (int g = 1; g < group_.order(); ++g) {
        const QMatrix* b = mats_[g].block(degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(degree));
        for (int j = 0; j < d; ++j) {
            QVec v = b->column(j);
            v[j] -= 1;
            relations.insert(std::move(v));
        }
    }
    SpanBuilder full(d);
    for (const QVec& row : relations.basis()) full.insert(row);
    for (int j = 0; j < d; ++j) {
        QVec e(d);
        e[j] = 1;
        if (full.insert(std::move(e))) out.representative_indices.push_back(j);
    }
    out.dim = int(out.representative_indices.size());
    return out;
}

bool GroupRep::commutes_with(const LinearMap& d, std::string* witness) const {
    for (int g = 0; g < group_.order(); ++g) {
        for (int n : carrier_.degrees()) {
            const QMatrix* dn = d.block(n);
            if (!dn || dn->rows() == 0) continue;
            const QMatrix* gn = mats_[g].block(n);
            const QMatrix* gn1 = mats_[g].block(n + d.shift());
            if (!gn || !gn1) continue;
            if (!((*gn1) * (*dn) == (*dn) * (*gn))) {
                if (witness)
                    *witness = "element " + group_.element_name(g) + " fails to commute with d at degree " +
                               std::to_string(n);
                return false;
            }
        }
    }
    return true;
}

std::vector<QMatrix> induced_homology_action(const GroupRep& rep, const HomologyBasis& h) {
    int hdim = h.dim;
    std::vector<QMatrix> out;
    int amb = rep.carrier().dim(h.degree);
    // decomposition space: representatives first, then boundary basis
    std::vector<QVec> cols = h.representatives;
    cols.insert(cols.end(), h.boundaries.begin(), h.boundaries.end());
    QMatrix span = QMatrix::from_columns(cols, amb);
    for (int g = 0; g < rep.group().order(); ++g) {
        QMatrix m(hdim, hdim);
        const QMatrix* b = rep.matrix(g).block(h.degree);
        if (!b) throw StructuralError("action matrix missing at degree " + std::to_string(h.degree));
        for (int j = 0; j < hdim; ++j) {
            QVec img = b->apply(h.representatives[j]);
            auto c = solve_linear(span, img);
            if (!c) throw StructuralError("induced homology action: image is not a cycle mod boundaries");
            for (int i = 0; i < hdim; ++i) m.at(i, j) = (*c)[i];
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::string InvariantHomologyReport::format() const {
    std::string s = ok ? "invariant-homology check: ok\n" : "invariant-homology check: FAILED\n";
    for (const auto& r : rows)
        s += "  degree " + std::to_string(r.degree) + ": dim H(V^G) = " + std::to_string(r.dim_h_of_invariants) +
             ", dim (H V)^G = " + std::to_string(r.dim_invariants_of_h) + "\n";
    if (!witness.empty()) s += "  " + witness + "\n";
    return s;
}

InvariantHomologyReport invariant_homology_check(const ChainComplex& cx, const GroupRep& rep,
                                                 const std::vector<int>& degrees) {
    cx.validate();
    std::string w;
    if (!rep.commutes_with(cx.d, &w)) throw StructuralError("action is not a chain map: " + w);

    // Restricted complex on the invariant subspaces.
    std::map<int, std::vector<QVec>> inv;
    for (int n : cx.module.degrees()) inv[n] = rep.invariants(n);

    InvariantHomologyReport report;
    for (int n : degrees) {
        // side 1: homology of V^G
        int dim_inv_n = int(inv.count(n) ? inv[n].size() : 0);
        int rank_d_n = 0, rank_d_up = 0;
        if (dim_inv_n > 0) {
            const QMatrix* dn = cx.d.block(n);
            if (dn && dn->rows() > 0) {
                std::vector<QVec> images;
                for (const QVec& v : inv[n]) images.push_back(dn->apply(v));
                rank_d_n = int(column_space_basis(QMatrix::from_columns(images, dn->rows())).size());
            }
        }
        {
            const QMatrix* dup = cx.d.block(n + 1);
            auto it = inv.find(n + 1);
            if (dup && dup->rows() > 0 && it != inv.end() && !it->second.empty()) {
                std::vector<QVec> images;
                for (const QVec& v : it->second) images.push_back(dup->apply(v));
                rank_d_up = int(column_space_basis(QMatrix::from_columns(images, dup->rows())).size());
            }
        }
        int h_of_inv = dim_inv_n - rank_d_n - rank_d_up;

        // side 2: invariants of H(V), via the induced action on representatives
        HomologyBasis h = homology(cx, n);
        int inv_of_h = 0;
        if (h.dim > 0) {
            auto mats = induced_homology_action(rep, h);
            std::vector<QMatrix> nontriv(mats.begin() + 1, mats.end());
            inv_of_h = int(fixed_space(nontriv, h.dim).size());
        }

        report.rows.push_back({n, h_of_inv, inv_of_h});
        if (h_of_inv != inv_of_h) {
            report.ok = false;
            if (report.witness.empty())
                report.witness = "mismatch at degree " + std::to_string(n);
        }
    }
    return report;
}

}  // namespace mcfix

#include "mcfix/sl_algebra.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace mcfix {

std::string convention_name(Convention c) {
    return c == Convention::Shifted ? "shifted" : "dglie";
}

std::string format_tuple(const GradedModule& m, const Tuple& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += m.label(t[i].degree, t[i].index);
    }
    return s + ")";
}

SLAlgebra::SLAlgebra(GradedModule carrier, Convention convention, int arity_cap, int degree_cap)
    : carrier_(std::move(carrier)), convention_(convention), arity_cap_(arity_cap), degree_cap_(degree_cap) {
    if (arity_cap_ < 1) throw SchemaError("arity cap must be >= 1");
    if (convention_ == Convention::DgLie && arity_cap_ > 2)
        arity_cap_ = 2;  // dg Lie tables stop at the binary bracket
}

void SLAlgebra::set_weight(const BasisRef& b, int w) {
    if (w < 1) throw SchemaError("filtration weight must be positive");
    auto& v = weights_[b.degree];
    if (int(v.size()) < carrier_.dim(b.degree)) v.resize(carrier_.dim(b.degree), 1);
    v.at(b.index) = w;
}

int SLAlgebra::weight(const BasisRef& b) const {
    auto it = weights_.find(b.degree);
    if (it == weights_.end() || b.index >= int(it->second.size())) return 1;
    return it->second[b.index];
}

int SLAlgebra::max_weight() const {
    int w = 1;
    for (const auto& [deg, v] : weights_)
        for (int x : v) w = std::max(w, x);
    return w;
}

Rat SLAlgebra::swap_sign(const BasisRef& a, const BasisRef& b) const {
    int e = a.degree * b.degree;
    Rat koszul = ((e & 1) == 0) ? 1 : -1;
    if (convention_ == Convention::DgLie) return -koszul;  // antisymmetric binary bracket
    return koszul;
}

std::optional<SLAlgebra::Canonical> SLAlgebra::canonicalize(Tuple t) const {
    Rat sign = 1;
    // insertion sort, accumulating the sign of each adjacent transposition
    for (size_t i = 1; i < t.size(); ++i)
        for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
            sign *= swap_sign(t[j - 1], t[j]);
            std::swap(t[j - 1], t[j]);
        }
    // a repeated entry whose self-swap sign is -1 forces the bracket to vanish
    for (size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1] && swap_sign(t[i], t[i + 1]) == -1) return std::nullopt;
    return Canonical{std::move(t), sign};
}

int SLAlgebra::bracket_output_degree(const Tuple& args) const {
    int s = 0;
    for (const auto& b : args) s += b.degree;
    if (convention_ == Convention::Shifted) return s - 1;
    return args.size() == 1 ? s - 1 : s;  // dgLie: d has degree -1, [,] degree 0
}

void SLAlgebra::add_bracket(const Tuple& args, QVec value) {
    int n = int(args.size());
    if (n < 1 || n > arity_cap_)
        throw SchemaError("bracket arity " + std::to_string(n) + " outside cap " + std::to_string(arity_cap_));
    for (const auto& b : args)
        if (b.index < 0 || b.index >= carrier_.dim(b.degree))
            throw SchemaError("bracket argument outside the carrier basis");
    int out = bracket_output_degree(args);
    if (int(value.size()) != carrier_.dim(out))
        throw SchemaError("bracket value has dimension " + std::to_string(value.size()) + " but degree " +
                          std::to_string(out) + " has dimension " + std::to_string(carrier_.dim(out)));
    auto canon = canonicalize(args);
    if (!canon) {
        if (!is_zero(value))
            symmetry_violations_.push_back("entry on " + format_tuple(carrier_, args) +
                                           " must vanish by the symmetry law");
        return;
    }
    if (is_zero(value) && !table_.count(canon->tuple)) return;
    QVec stored = canon->sign * value;  // ℓ(args) = sign · ℓ(canonical)
    auto it = table_.find(canon->tuple);
    if (it == table_.end()) {
        table_.emplace(std::move(canon->tuple), std::move(stored));
        return;
    }
    if (it->second != stored)
        symmetry_violations_.push_back("entries on " + format_tuple(carrier_, canon->tuple) +
                                       " disagree with the symmetry sign (expected " +
                                       (canon->sign == 1 ? std::string("+1") : std::string("-1")) + " relation)");
}

std::vector<int> SLAlgebra::arities() const {
    std::vector<int> out;
    for (const auto& [t, v] : table_)
        if (out.empty() || out.back() != int(t.size())) {
            if (std::find(out.begin(), out.end(), int(t.size())) == out.end()) out.push_back(int(t.size()));
        }
    std::sort(out.begin(), out.end());
    return out;
}

GradedVec SLAlgebra::eval_basis(const Tuple& args) const {
    int out = bracket_output_degree(args);
    GradedVec result{out, QVec(carrier_.dim(out))};
    if (convention_ == Convention::DgLie && args.size() > 2) return result;
    auto canon = canonicalize(args);
    if (!canon) return result;
    auto it = table_.find(canon->tuple);
    if (it == table_.end()) return result;
    result.coords = canon->sign * it->second;
    return result;
}

GradedVec SLAlgebra::eval(const std::vector<GradedVec>& args) const {
    Tuple refs(args.size());
    int out;
    {
        for (size_t i = 0; i < args.size(); ++i) refs[i].degree = args[i].degree;
        out = bracket_output_degree(refs);
    }
    GradedVec acc{out, QVec(carrier_.dim(out))};
    // multilinear expansion over the support of each argument
    std::vector<std::vector<int>> support(args.size());
    for (size_t i = 0; i < args.size(); ++i) {
        for (int j = 0; j < int(args[i].coords.size()); ++j)
            if (args[i].coords[j] != 0) support[i].push_back(j);
        if (support[i].empty()) return acc;
    }
    std::vector<int> pos(args.size(), 0);
    while (true) {
        Rat coeff = 1;
        for (size_t i = 0; i < args.size(); ++i) {
            refs[i].index = support[i][pos[i]];
            coeff *= args[i].coords[refs[i].index];
        }
        GradedVec term = eval_basis(refs);
        axpy(acc.coords, coeff, term.coords);
        size_t k = 0;
        while (k < args.size()) {
            if (++pos[k] < int(support[k].size())) break;
            pos[k] = 0;
            ++k;
        }
        if (k == args.size()) break;
    }
    return acc;
}

LinearMap SLAlgebra::differential() const {
    LinearMap d = LinearMap::zero(carrier_, carrier_, -1);
    for (int n : carrier_.degrees()) {
        QMatrix block(carrier_.dim(n - 1), carrier_.dim(n));
        for (int j = 0; j < carrier_.dim(n); ++j) {
            GradedVec col = eval_basis({BasisRef{n, j}});
            for (int i = 0; i < block.rows(); ++i) block.at(i, j) = col.coords[i];
        }
        d.set_block(n, std::move(block));
    }
    return d;
}

SymmetryReport SLAlgebra::check_symmetry() const {
    SymmetryReport rep;
    if (!symmetry_violations_.empty()) {
        rep.ok = false;
        rep.witness = symmetry_violations_.front();
        return rep;
    }
    for (const auto& [t, v] : table_)
        for (size_t i = 0; i + 1 < t.size(); ++i)
            if (t[i] == t[i + 1] && swap_sign(t[i], t[i + 1]) == -1 && !is_zero(v)) {
                rep.ok = false;
                rep.witness = "entry on " + format_tuple(carrier_, t) + " must vanish by the symmetry law";
                return rep;
            }
    return rep;
}

namespace {

// Koszul sign of pulling the positions in `chosen` (ascending) to the front,
// keeping both blocks in order: product over pairs a < b with a unchosen,
// b chosen of (-1)^{|x_a||x_b|}.
int shuffle_sign_exponent(const Tuple& t, const std::vector<int>& chosen) {
    std::vector<bool> in(t.size(), false);
    for (int c : chosen) in[c] = true;
    int e = 0;
    for (size_t a = 0; a < t.size(); ++a) {
        if (in[a]) continue;
        for (size_t b = a + 1; b < t.size(); ++b)
            if (in[b]) e += t[a].degree * t[b].degree;
    }
    return e;
}

void enumerate_multisets(const std::vector<BasisRef>& all, int n, std::vector<int>& stack,
                         const std::function<void(const std::vector<int>&)>& emit, int start) {
    if (int(stack.size()) == n) {
        emit(stack);
        return;
    }
    for (int i = start; i < int(all.size()); ++i) {
        stack.push_back(i);
        enumerate_multisets(all, n, stack, emit, i);
        stack.pop_back();
    }
}

}  // namespace

JacobiReport SLAlgebra::check_jacobi(int n_max) const {
    if (n_max > arity_cap_ + 1) n_max = arity_cap_ + 1;
    if (convention_ == Convention::DgLie) {
        JacobiReport rep = suspend().check_jacobi(n_max);
        return rep;
    }
    JacobiReport rep;
    std::vector<BasisRef> all;
    for (int n : carrier_.degrees())
        for (int i = 0; i < carrier_.dim(n); ++i) all.push_back({n, i});

    for (int n = 1; n <= n_max && rep.ok; ++n) {
        std::vector<int> stack;
        std::function<void(const std::vector<int>&)> run = [&](const std::vector<int>& idxs) {
            if (!rep.ok) return;
            Tuple t;
            t.reserve(n);
            int total_degree = 0;
            for (int i : idxs) {
                t.push_back(all[i]);
                total_degree += all[i].degree;
            }
            int final_degree = total_degree - 2;  // two degree -1 operations
            if (truncated_below_ && final_degree < *truncated_below_) {
                ++rep.skipped;
                return;
            }
            if (carrier_.dim(final_degree) == 0) {
                ++rep.checked;  // residual lives in a zero space
                return;
            }
            // check the truncation window for the intermediate outputs
            if (truncated_below_) {
                for (int k = 1; k <= n; ++k) {
                    // smallest possible inner degree for arity k within this tuple
                    // (inner output degree depends on the chosen shuffle)
                    std::vector<int> degs;
                    for (const auto& b : t) degs.push_back(b.degree);
                    std::sort(degs.begin(), degs.end());
                    int lo = 0;
                    for (int i = 0; i < k; ++i) lo += degs[i];
                    if (lo - 1 < *truncated_below_) {
                        ++rep.skipped;
                        return;
                    }
                }
            }
            QVec residual(carrier_.dim(final_degree));
            std::vector<int> comb;
            for (int k = 1; k <= n; ++k) {
                // all k-subsets of positions = Sh(k, n-k)
                comb.assign(k, 0);
                for (int i = 0; i < k; ++i) comb[i] = i;
                while (true) {
                    Tuple inner_args, outer_rest;
                    std::vector<bool> used(n, false);
                    for (int c : comb) {
                        inner_args.push_back(t[c]);
                        used[c] = true;
                    }
                    for (int i = 0; i < n; ++i)
                        if (!used[i]) outer_rest.push_back(t[i]);
                    int e = shuffle_sign_exponent(t, comb);
                    Rat sgn = ((e & 1) == 0) ? 1 : -1;
                    GradedVec inner = eval_basis(inner_args);
                    if (!is_zero(inner.coords)) {
                        // outer ℓ_{n-k+1}(inner, rest...)
                        std::vector<GradedVec> outer_args;
                        outer_args.push_back(inner);
                        for (const auto& b : outer_rest) outer_args.push_back(basis_vector(carrier_, b.degree, b.index));
                        GradedVec term = eval(outer_args);
                        axpy(residual, sgn, term.coords);
                    }
                    // next combination
                    int i = k - 1;
                    while (i >= 0 && comb[i] == n - k + i) --i;
                    if (i < 0) break;
                    ++comb[i];
                    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                }
            }
            ++rep.checked;
            if (!is_zero(residual)) {
                rep.ok = false;
                rep.arity = n;
                rep.witness = "identity n=" + std::to_string(n) + " fails on " + format_tuple(carrier_, t) +
                              " with residual " + format_combination(carrier_, final_degree, residual);
            }
        };
        enumerate_multisets(all, n, stack, run, 0);
    }
    return rep;
}

FiltrationReport SLAlgebra::check_filtration() const {
    FiltrationReport rep;
    for (const auto& [t, v] : table_) {
        int wsum = 0;
        for (const auto& b : t) wsum += weight(b);
        int out = bracket_output_degree(t);
        for (int i = 0; i < int(v.size()); ++i)
            if (v[i] != 0 && weight({out, i}) < wsum) {
                rep.ok = false;
                rep.witness = "bracket on " + format_tuple(carrier_, t) + " has weight-" +
                              std::to_string(weight({out, i})) + " component " + carrier_.label(out, i) +
                              " below the argument weight sum " + std::to_string(wsum);
                return rep;
            }
    }
    return rep;
}

namespace {
int suspension_sign_exponent(const std::vector<int>& old_degrees) {
    int k = int(old_degrees.size());
    int e = 0;
    for (int i = 0; i < k; ++i) e += (k - 1 - i) * old_degrees[i];
    return e;
}
}  // namespace

SLAlgebra SLAlgebra::suspend() const {
    if (convention_ != Convention::DgLie)
        throw StructuralError("suspend expects a dg Lie algebra");
    GradedModule up;
    for (int n : carrier_.degrees())
        for (const auto& label : carrier_.labels(n)) up.add(n + 1, label);
    SLAlgebra s(std::move(up), Convention::Shifted, std::max(arity_cap_, 2), degree_cap_ + 1);
    for (const auto& [deg, ws] : weights_)
        for (int i = 0; i < int(ws.size()); ++i) s.set_weight({deg + 1, i}, ws[i]);
    if (truncated_below_) s.set_truncated_below(*truncated_below_ + 1);
    for (const auto& [t, v] : table_) {
        Tuple up_t = t;
        std::vector<int> old_degrees;
        for (auto& b : up_t) {
            old_degrees.push_back(b.degree);
            b.degree += 1;
        }
        int e = suspension_sign_exponent(old_degrees);
        s.add_bracket(up_t, ((e & 1) == 0) ? v : Rat(-1) * v);
    }
    if (!s.symmetry_violations_.empty())
        throw StructuralError("suspension produced an inconsistent table: " + s.symmetry_violations_.front());
    return s;
}

SLAlgebra SLAlgebra::desuspend() const {
    if (convention_ != Convention::Shifted)
        throw StructuralError("desuspend expects a shifted algebra");
    for (const auto& [t, v] : table_)
        if (t.size() > 2) throw StructuralError("desuspend requires a table of arity <= 2");
    GradedModule down;
    for (int n : carrier_.degrees())
        for (const auto& label : carrier_.labels(n)) down.add(n - 1, label);
    SLAlgebra s(std::move(down), Convention::DgLie, 2, degree_cap_ - 1);
    for (const auto& [deg, ws] : weights_)
        for (int i = 0; i < int(ws.size()); ++i) s.set_weight({deg - 1, i}, ws[i]);
    if (truncated_below_) s.set_truncated_below(*truncated_below_ - 1);
    for (const auto& [t, v] : table_) {
        Tuple dn_t = t;
        std::vector<int> old_degrees;
        for (auto& b : dn_t) {
            b.degree -= 1;
            old_degrees.push_back(b.degree);
        }
        int e = suspension_sign_exponent(old_degrees);
        s.add_bracket(dn_t, ((e & 1) == 0) ? v : Rat(-1) * v);
    }
    if (!s.symmetry_violations_.empty())
        throw StructuralError("desuspension produced an inconsistent table: " + s.symmetry_violations_.front());
    return s;
}

std::map<int, std::vector<QVec>> SLAlgebra::lcs_filtration(int p) const {
    if (p < 1) throw SchemaError("filtration stage must be >= 1");
    std::map<int, std::vector<QVec>> out;
    for (int n : carrier_.degrees()) {
        std::vector<QVec> vs;
        for (int i = 0; i < carrier_.dim(n); ++i)
            if (weight({n, i}) >= p) {
                QVec e(carrier_.dim(n));
                e[i] = 1;
                vs.push_back(std::move(e));
            }
        if (!vs.empty()) out[n] = std::move(vs);
    }
    return out;
}

SLAlgebra SLAlgebra::nilpotent_quotient(int p) const {
    if (p < 2) throw SchemaError("nilpotent quotient needs p >= 2");
    GradedModule q;
    std::map<int, std::vector<int>> keep;  // old index -> new index, -1 dropped
    for (int n : carrier_.degrees()) {
        auto& km = keep[n];
        km.assign(carrier_.dim(n), -1);
        for (int i = 0; i < carrier_.dim(n); ++i)
            if (weight({n, i}) < p) km[i] = q.add(n, carrier_.label(n, i));
    }
    SLAlgebra out(std::move(q), convention_, arity_cap_, degree_cap_);
    if (truncated_below_) out.set_truncated_below(*truncated_below_);
    for (int n : carrier_.degrees())
        for (int i = 0; i < carrier_.dim(n); ++i)
            if (keep[n][i] >= 0) out.set_weight({n, keep[n][i]}, weight({n, i}));
    for (const auto& [t, v] : table_) {
        bool kept = true;
        Tuple nt = t;
        for (auto& b : nt) {
            int ni = keep[b.degree][b.index];
            if (ni < 0) { kept = false; break; }
            b.index = ni;
        }
        if (!kept) continue;
        int od = bracket_output_degree(t);
        QVec nv(out.carrier().dim(od));
        for (int i = 0; i < int(v.size()); ++i) {
            int ni = keep[od][i];
            if (ni >= 0) nv[ni] = v[i];
        }
        out.add_bracket(nt, std::move(nv));
    }
    return out;
}

bool SLAlgebra::is_abelian() const {
    for (const auto& [t, v] : table_)
        if (t.size() >= 2 && !is_zero(v)) return false;
    return true;
}

int SLAlgebra::connectivity() const {
    if (carrier_.empty()) return INT_MAX;
    return carrier_.min_degree();
}

}  // namespace mcfix

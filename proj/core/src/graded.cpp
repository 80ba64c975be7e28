#include "mcfix/graded.hpp"

#include <algorithm>

namespace mcfix {

int GradedModule::add(int degree, std::string label) {
    auto& v = basis_[degree];
    for (const auto& l : v)
        if (l == label) throw SchemaError("duplicate basis label '" + label + "' in degree " + std::to_string(degree));
    v.push_back(std::move(label));
    return int(v.size()) - 1;
}

int GradedModule::dim(int degree) const {
    auto it = basis_.find(degree);
    return it == basis_.end() ? 0 : int(it->second.size());
}

const std::vector<std::string>& GradedModule::labels(int degree) const {
    static const std::vector<std::string> kEmpty;
    auto it = basis_.find(degree);
    return it == basis_.end() ? kEmpty : it->second;
}

int GradedModule::index_of(int degree, std::string_view label) const {
    const auto& v = labels(degree);
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] == label) return int(i);
    return -1;
}

std::vector<int> GradedModule::degrees() const {
    std::vector<int> out;
    for (const auto& [n, v] : basis_)
        if (!v.empty()) out.push_back(n);
    return out;
}

int GradedModule::min_degree() const {
    auto ds = degrees();
    if (ds.empty()) throw StructuralError("min_degree of empty module");
    return ds.front();
}

int GradedModule::max_degree() const {
    auto ds = degrees();
    if (ds.empty()) throw StructuralError("max_degree of empty module");
    return ds.back();
}

int GradedModule::total_dim() const {
    int t = 0;
    for (const auto& [n, v] : basis_) t += int(v.size());
    return t;
}

GradedVec basis_vector(const GradedModule& m, int degree, int index) {
    GradedVec v{degree, QVec(m.dim(degree))};
    v.coords[index] = 1;
    return v;
}

std::string format_combination(const GradedModule& m, int degree, const QVec& coords) {
    std::string out;
    for (size_t i = 0; i < coords.size(); ++i) {
        const Rat& c = coords[i];
        if (c == 0) continue;
        Rat a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (a != 1) out += rat_str(a) + " ";
        out += m.label(degree, int(i));
    }
    return out.empty() ? "0" : out;
}

LinearMap LinearMap::zero(const GradedModule& source, const GradedModule& target, int shift) {
    LinearMap f(shift);
    for (int n : source.degrees()) f.blocks_[n] = QMatrix(target.dim(n + shift), source.dim(n));
    return f;
}

LinearMap LinearMap::identity(const GradedModule& m) {
    LinearMap f(0);
    for (int n : m.degrees()) f.blocks_[n] = QMatrix::identity(m.dim(n));
    return f;
}

const QMatrix* LinearMap::block(int degree) const {
    auto it = blocks_.find(degree);
    return it == blocks_.end() ? nullptr : &it->second;
}

GradedVec LinearMap::apply(const GradedVec& v, int target_dim) const {
    const QMatrix* b = block(v.degree);
    if (!b) {
        if (target_dim < 0) throw StructuralError("linear map has no block at degree " + std::to_string(v.degree));
        return {v.degree + shift_, QVec(target_dim)};
    }
    return {v.degree + shift_, b->apply(v.coords)};
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    LinearMap f(shift_ + inner.shift_);
    for (const auto& [n, b] : inner.blocks_) {
        const QMatrix* outer = block(n + inner.shift_);
        if (!outer) {
            f.blocks_[n] = QMatrix(0, b.cols());
            continue;
        }
        f.blocks_[n] = (*outer) * b;
    }
    return f;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
    LinearMap f(shift_);
    f.blocks_ = blocks_;
    for (const auto& [n, b] : o.blocks_) {
        auto it = f.blocks_.find(n);
        if (it == f.blocks_.end())
            f.blocks_[n] = b;
        else
            it->second = it->second + b;
    }
    return f;
}

LinearMap LinearMap::operator*(const Rat& c) const {
    LinearMap f(shift_);
    for (const auto& [n, b] : blocks_) f.blocks_[n] = b * c;
    return f;
}

bool LinearMap::same_blocks(const LinearMap& o) const {
    if (shift_ != o.shift_) return false;
    for (const auto& [n, b] : blocks_) {
        const QMatrix* ob = o.block(n);
        if (ob ? !(b == *ob) : !b.is_zero()) return false;
    }
    for (const auto& [n, b] : o.blocks_)
        if (!block(n) && !b.is_zero()) return false;
    return true;
}

void check_map_shapes(const LinearMap& f, const GradedModule& source, const GradedModule& target,
                      const std::string& what) {
    for (int n : source.degrees()) {
        const QMatrix* b = f.block(n);
        int want_rows = target.dim(n + f.shift());
        int want_cols = source.dim(n);
        if (!b) {
            if (want_rows != 0 && want_cols != 0)
                continue;  // absent block reads as zero
            continue;
        }
        if (b->rows() != want_rows || b->cols() != want_cols)
            throw StructuralError(what + ": block at degree " + std::to_string(n) + " has shape " +
                                  std::to_string(b->rows()) + "x" + std::to_string(b->cols()) +
                                  ", expected " + std::to_string(want_rows) + "x" + std::to_string(want_cols));
    }
}

void ChainComplex::validate() const {
    check_map_shapes(d, module, module, "differential");
    for (int n : module.degrees()) {
        const QMatrix* b1 = d.block(n);
        const QMatrix* b2 = d.block(n - 1);
        if (!b1 || !b2) continue;
        if (b2->rows() == 0 || b1->cols() == 0) continue;
        if (!((*b2) * (*b1)).is_zero())
            throw StructuralError("d∘d != 0 from degree " + std::to_string(n));
    }
}

HomologyBasis homology(const ChainComplex& cx, int degree) {
    cx.validate();
    int n = degree;
    int dn = cx.module.dim(n);
    HomologyBasis h;
    h.degree = n;
    if (dn == 0) return h;

    const QMatrix* dmat = cx.d.block(n);
    if (dmat && dmat->rows() > 0)
        h.cycles = kernel_basis(*dmat);
    else {
        h.cycles.reserve(dn);
        for (int i = 0; i < dn; ++i) {
            QVec e(dn);
            e[i] = 1;
            h.cycles.push_back(std::move(e));
        }
    }

    const QMatrix* dup = cx.d.block(n + 1);
    if (dup && dup->cols() > 0) h.boundaries = column_space_basis(*dup);

    SpanBuilder span(dn);
    for (const QVec& b : h.boundaries) span.insert(b);
    for (const QVec& z : h.cycles)
        if (span.insert(z)) h.representatives.push_back(z);
    h.dim = int(h.representatives.size());
    return h;
}

}  // namespace mcfix

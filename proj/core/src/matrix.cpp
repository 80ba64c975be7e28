#include "mcfix/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcfix {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

Rat inv_factorial(int n) {
    Rat f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return Rat(1) / f;
}

QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

QVec operator*(const Rat& c, const QVec& v) {
    QVec r(v);
    for (auto& x : r) x *= c;
    return r;
}

QVec& operator+=(QVec& a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

void axpy(QVec& acc, const Rat& c, const QVec& v) {
    if (c == 0) return;
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * v[i];
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVec>& cols, int rows) {
    QMatrix m(rows, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, int cols) {
    QMatrix m(int(rows.size()), cols);
    for (int i = 0; i < int(rows.size()); ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) == 0) continue;
                r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix r(*this);
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix r(*this);
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

QMatrix QMatrix::operator*(const Rat& c) const {
    QMatrix r(*this);
    for (auto& x : r.a_) x *= c;
    return r;
}

QVec QMatrix::apply(const QVec& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    QVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j) == 0 || v[j] == 0) continue;
            r[i] += at(i, j) * v[j];
        }
    return r;
}

QMatrix QMatrix::transposed() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

QVec QMatrix::column(int j) const {
    QVec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

QVec QMatrix::row(int i) const {
    QVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

bool QMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

bool QMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

RrefResult rref(QMatrix m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = m.at(r, c);
        for (int j = c; j < m.cols(); ++j)
            if (m.at(r, j) != 0) m.at(r, j) /= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (m.at(r, j) != 0) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

int rank_of(const QMatrix& m) {
    return rref(m).rank();
}

std::vector<QVec> kernel_basis(const QMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVec v(m.cols());
        v[f] = 1;
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i) v[rr.pivot_cols[i]] = -rr.mat.at(int(i), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<QVec> column_space_basis(const QMatrix& m) {
    RrefResult rr = rref(m.transposed());
    std::vector<QVec> basis;
    for (int i = 0; i < rr.rank(); ++i) basis.push_back(rr.mat.row(i));
    return basis;
}

std::optional<QVec> solve_linear(const QMatrix& a, const QVec& b) {
    QMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult rr = rref(std::move(aug));
    QVec x(a.cols());
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        if (rr.pivot_cols[i] == a.cols()) return std::nullopt;  // row (0...0|1)
        x[rr.pivot_cols[i]] = rr.mat.at(int(i), a.cols());
    }
    return x;
}

std::optional<std::vector<QVec>> coordinates_in_span(const QMatrix& span_cols,
                                                     const std::vector<QVec>& vs) {
    std::vector<QVec> out;
    out.reserve(vs.size());
    for (const QVec& v : vs) {
        auto c = solve_linear(span_cols, v);
        if (!c) return std::nullopt;
        out.push_back(std::move(*c));
    }
    return out;
}

bool SpanBuilder::insert(QVec v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < dim_; ++j)
        if (v[j] != 0) { p = j; break; }
    if (p < 0) return false;
    Rat inv = v[p];
    for (auto& x : v) if (x != 0) x /= inv;
    // keep back-substituted form
    for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i][p] != 0) axpy(rows_[i], -rows_[i][p], v);
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    size_t idx = size_t(pos - pivots_.begin());
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

QVec SpanBuilder::reduce(QVec v) const {
    for (size_t i = 0; i < rows_.size(); ++i)
        if (v[pivots_[i]] != 0) axpy(v, -v[pivots_[i]], rows_[i]);
    return v;
}

bool SpanBuilder::contains(QVec v) const {
    return is_zero(reduce(std::move(v)));
}

std::vector<QVec> SpanBuilder::basis() const {
    return rows_;
}

}  // namespace mcfix

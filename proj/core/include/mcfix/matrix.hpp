#pragma once

#include <optional>
#include <vector>

#include "mcfix/rational.hpp"

namespace mcfix {

using QVec = std::vector<Rat>;

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& c, const QVec& v);
QVec& operator+=(QVec& a, const QVec& b);
bool is_zero(const QVec& v);
void axpy(QVec& acc, const Rat& c, const QVec& v);  // acc += c*v

// Dense matrix over the rationals. All reductions are exact; row-echelon
// pivots are always the leftmost nonzero column, so every derived basis is
// reproducible across runs.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static QMatrix identity(int n);
    static QMatrix from_columns(const std::vector<QVec>& cols, int rows);
    static QMatrix from_rows(const std::vector<QVec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Rat& c) const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    QVec apply(const QVec& v) const;
    QMatrix transposed() const;
    QVec column(int j) const;
    QVec row(int i) const;
    bool is_zero() const;
    bool is_identity() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

struct RrefResult {
    QMatrix mat;
    std::vector<int> pivot_cols;
    int rank() const { return int(pivot_cols.size()); }
};

RrefResult rref(QMatrix m);
int rank_of(const QMatrix& m);

// Kernel basis in free-column order: one vector per non-pivot column.
std::vector<QVec> kernel_basis(const QMatrix& m);

// Canonical (reduced row-echelon) basis of the column span.
std::vector<QVec> column_space_basis(const QMatrix& m);

// One exact solution of A x = b, or nullopt when inconsistent.
std::optional<QVec> solve_linear(const QMatrix& a, const QVec& b);

// Express each of `vs` in the given spanning columns; nullopt if one fails.
std::optional<std::vector<QVec>> coordinates_in_span(const QMatrix& span_cols,
                                                     const std::vector<QVec>& vs);

// Incremental echelon span with exact membership tests.
class SpanBuilder {
public:
    explicit SpanBuilder(int dim) : dim_(dim) {}

    // Returns true when v was independent of the current span (and adds it).
    bool insert(QVec v);
    bool contains(QVec v) const;
    QVec reduce(QVec v) const;  // v minus its projection onto the span
    int rank() const { return int(rows_.size()); }
    int dim() const { return dim_; }
    // Reduced echelon basis of the span accumulated so far.
    std::vector<QVec> basis() const;

private:
    int dim_;
    std::vector<QVec> rows_;    // echelon rows, pivot normalized to 1
    std::vector<int> pivots_;   // pivot column of each row, increasing
};

}  // namespace mcfix

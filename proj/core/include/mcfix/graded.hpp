#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mcfix/errors.hpp"
#include "mcfix/matrix.hpp"

namespace mcfix {

// Finite graded Q-vector space with a named, ordered basis per degree.
class GradedModule {
public:
    int add(int degree, std::string label);  // returns index within the degree
    int dim(int degree) const;
    const std::vector<std::string>& labels(int degree) const;
    const std::string& label(int degree, int index) const { return labels(degree)[index]; }
    int index_of(int degree, std::string_view label) const;  // -1 when absent

    std::vector<int> degrees() const;  // degrees with dim > 0, ascending
    int min_degree() const;
    int max_degree() const;
    int total_dim() const;
    bool empty() const { return basis_.empty(); }

    bool operator==(const GradedModule& o) const { return basis_ == o.basis_; }

private:
    std::map<int, std::vector<std::string>> basis_;
};

// Homogeneous element: coordinates in the basis of one degree.
struct GradedVec {
    int degree = 0;
    QVec coords;
};

GradedVec basis_vector(const GradedModule& m, int degree, int index);

// Renders a coordinate vector as a signed combination of basis labels,
// e.g. "u1 + u2", "[u1,u1] - 1/2 [u1,u2]".
std::string format_combination(const GradedModule& m, int degree, const QVec& coords);

// Degree-homogeneous linear map with one matrix block per source degree.
// block(n) maps coordinates in degree n to coordinates in degree n + shift.
class LinearMap {
public:
    LinearMap() = default;
    explicit LinearMap(int shift) : shift_(shift) {}

    static LinearMap zero(const GradedModule& source, const GradedModule& target, int shift);
    static LinearMap identity(const GradedModule& m);

    int shift() const { return shift_; }
    void set_block(int degree, QMatrix m) { blocks_[degree] = std::move(m); }
    const QMatrix* block(int degree) const;
    const std::map<int, QMatrix>& blocks() const { return blocks_; }

    // Applies the block at v.degree; absent block means the zero map into
    // a target of dimension target_dim (pass -1 to require a block).
    GradedVec apply(const GradedVec& v, int target_dim = -1) const;

    LinearMap compose(const LinearMap& inner) const;  // this ∘ inner
    LinearMap operator+(const LinearMap& o) const;
    LinearMap operator*(const Rat& c) const;
    bool same_blocks(const LinearMap& o) const;

private:
    int shift_ = 0;
    std::map<int, QMatrix> blocks_;
};

// Validates block shapes of `f` against source/target modules.
void check_map_shapes(const LinearMap& f, const GradedModule& source, const GradedModule& target,
                      const std::string& what);

// Chain complex over Q: degree -1 differential with d∘d = 0.
struct ChainComplex {
    GradedModule module;
    LinearMap d;  // shift -1

    // Throws StructuralError naming the offending degree if d∘d != 0.
    void validate() const;
};

struct HomologyBasis {
    int degree = 0;
    int dim = 0;
    std::vector<QVec> representatives;  // cycles in module coordinates
    std::vector<QVec> boundaries;       // basis of im d_{n+1}
    std::vector<QVec> cycles;           // basis of ker d_n
};

// Exact homology at one degree; deterministic representative choice
// (kernel vectors independent modulo boundaries, in kernel-basis order).
HomologyBasis homology(const ChainComplex& cx, int degree);

}  // namespace mcfix

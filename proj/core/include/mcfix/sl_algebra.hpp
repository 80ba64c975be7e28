#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "mcfix/graded.hpp"

namespace mcfix {

// Two bracket conventions share one table format.
//
//   Shifted: every ℓ_n has degree -1 and is graded symmetric, a swap of
//            adjacent arguments multiplying by (-1)^{|x||y|}.
//   DgLie:   differential ℓ_1 of degree -1 plus one binary bracket of
//            degree 0 that is graded antisymmetric.
enum class Convention { Shifted, DgLie };

std::string convention_name(Convention c);

struct BasisRef {
    int degree = 0;
    int index = 0;
    auto operator<=>(const BasisRef&) const = default;
};

using Tuple = std::vector<BasisRef>;

std::string format_tuple(const GradedModule& m, const Tuple& t);

struct SymmetryReport {
    bool ok = true;
    std::string witness;  // first violating tuple with the expected sign
};

struct JacobiReport {
    bool ok = true;
    int arity = 0;        // n of the first failing identity
    std::string witness;  // tuple and residual of the first failure
    int checked = 0;      // identities evaluated
    int skipped = 0;      // identities not visible inside the truncation window
};

struct FiltrationReport {
    bool ok = true;
    std::string witness;
};

// Finitely presented (shifted) L-infinity algebra. Bracket tables are stored
// sparsely on canonical tuples, sorted by (degree, index); evaluation on any
// other argument order goes through the Koszul sign of the sorting
// permutation. Entries whose symmetry sign forces them to vanish are kept as
// recorded violations rather than silently dropped, so check_symmetry can
// report injected faults.
class SLAlgebra {
public:
    SLAlgebra(GradedModule carrier, Convention convention, int arity_cap, int degree_cap);

    const GradedModule& carrier() const { return carrier_; }
    Convention convention() const { return convention_; }
    int arity_cap() const { return arity_cap_; }
    int degree_cap() const { return degree_cap_; }

    // Degrees below this bound were discarded by a truncation and are not
    // faithful; Jacobi checks skip identities that leave the window.
    std::optional<int> truncated_below() const { return truncated_below_; }
    void set_truncated_below(int floor) { truncated_below_ = floor; }

    void set_weight(const BasisRef& b, int w);
    int weight(const BasisRef& b) const;  // defaults to 1
    int max_weight() const;

    // Records ℓ_n on the given tuple (any argument order). The value lives in
    // the bracket output degree and is canonicalized into the table.
    void add_bracket(const Tuple& args, QVec value);

    int bracket_output_degree(const Tuple& args) const;
    const std::map<Tuple, QVec>& table() const { return table_; }
    std::vector<int> arities() const;

    // ℓ on a basis tuple in any order (zero when no entry is stored).
    GradedVec eval_basis(const Tuple& args) const;
    // Multilinear extension to homogeneous vectors.
    GradedVec eval(const std::vector<GradedVec>& args) const;

    LinearMap differential() const;  // ℓ_1 as a LinearMap (zero blocks filled in)

    SymmetryReport check_symmetry() const;
    JacobiReport check_jacobi(int n_max) const;
    FiltrationReport check_filtration() const;

    // Degree shift by +1 with the décalage signs; DgLie tables become Shifted.
    SLAlgebra suspend() const;
    // Inverse of suspend; the table must have arity <= 2.
    SLAlgebra desuspend() const;

    // F^p L = span of basis elements of filtration weight >= p, per degree.
    std::map<int, std::vector<QVec>> lcs_filtration(int p) const;

    // L / F^p L: carrier restricted to weight < p, brackets projected.
    SLAlgebra nilpotent_quotient(int p) const;

    bool is_abelian() const;  // no ℓ_{>=2} entries
    // Least degree with a nonzero piece (connectivity).
    int connectivity() const;

private:
    friend class SLAlgebraBuilderAccess;

    // Sorts a tuple into canonical order, accumulating the convention's sign;
    // returns nullopt when a forced-zero repetition makes the entry vanish.
    struct Canonical {
        Tuple tuple;
        Rat sign;
    };
    std::optional<Canonical> canonicalize(Tuple t) const;
    Rat swap_sign(const BasisRef& a, const BasisRef& b) const;

    GradedModule carrier_;
    Convention convention_;
    int arity_cap_;
    int degree_cap_;
    std::optional<int> truncated_below_;
    std::map<int, std::vector<int>> weights_;
    std::map<Tuple, QVec> table_;
    std::vector<std::string> symmetry_violations_;
};

}  // namespace mcfix

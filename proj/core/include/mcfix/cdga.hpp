#pragma once

#include <optional>

#include "mcfix/equivariant.hpp"

namespace mcfix {

// Finite commutative differential graded algebra in non-negative
// cohomological degrees. The unit is an explicit degree-0 basis element;
// products with it are implied and need not be stored. Absent product
// entries read as zero, which is the right reading both for honest finite
// algebras (x² = 0 in H*(S²)) and for wordlength truncations.
class CdgaModel {
public:
    CdgaModel(GradedModule carrier, int unit_index = 0);

    const GradedModule& carrier() const { return carrier_; }
    BasisRef unit() const { return {0, unit_index_}; }
    int top_degree() const { return carrier_.max_degree(); }

    void set_product(const BasisRef& a, const BasisRef& b, QVec value);
    void set_differential_entry(const BasisRef& a, QVec value);  // degree +1
    void set_action(GroupRep rep);

    QVec product(const BasisRef& a, const BasisRef& b) const;  // in degree |a|+|b|
    GradedVec multiply(const GradedVec& a, const GradedVec& b) const;
    GradedVec multiply_all(const std::vector<GradedVec>& factors) const;  // left fold; empty -> unit
    const LinearMap& differential() const { return d_; }
    const std::optional<GroupRep>& action() const { return action_; }
    const std::map<std::pair<BasisRef, BasisRef>, QVec>& product_table() const { return product_; }

    GradedVec unit_vector() const;

private:
    GradedModule carrier_;
    int unit_index_;
    std::map<std::pair<BasisRef, BasisRef>, QVec> product_;
    LinearMap d_{+1};
    std::optional<GroupRep> action_;
};

struct CdgaReport {
    bool ok = true;
    std::string axiom;    // name of the first failing axiom
    std::string witness;  // offending basis elements
    std::string format() const;
};

// Exhaustively verifies unitality, graded commutativity, associativity,
// the Leibniz rule, d² = 0, and (when present) that the action respects
// product and differential.
CdgaReport check_cdga(const CdgaModel& a);

// True iff top degree of A < connectivity of L (the model hypothesis for
// homotopy-fixed-point claims about mapping spaces).
bool connectivity_guard(const CdgaModel& a, const SLAlgebra& l);

struct TensorModel {
    SLAlgebra algebra;
    std::optional<GroupRep> action;  // diagonal action when both factors have one
    bool dropped_nonpositive = false;
    // pair bookkeeping: for each tensor basis element, its (L, A) factors
    std::map<BasisRef, std::pair<BasisRef, BasisRef>> factors;
};

// sL∞ structure on L ⊗ A with |x⊗a| = |x| - |a|, restricted to degrees
// 1..degree_cap:
//   ℓ_1(x⊗a) = ℓ_1(x)⊗a + (-1)^{|x|} x⊗d_A(a)
//   ℓ_k(x_1⊗a_1,...,x_k⊗a_k) = (-1)^ε ℓ_k(x_1,...,x_k)⊗a_1···a_k,
//   ε = Σ_{i>j} |x_i||a_j|.
// When pairs of non-positive degree exist they are truncated away and the
// result is flagged (`dropped_nonpositive`), with the Jacobi window set so
// unverifiable identities are skipped rather than misreported.
//
// With `l_action` given, the diagonal action lands on the tensor (an action
// on A defaults to trivial when absent); the two groups must agree.
TensorModel tensor_model(const CdgaModel& a, const SLAlgebra& l, int degree_cap,
                         const GroupRep* l_action = nullptr);

// Chevalley–Eilenberg cochains of a finite-type positively graded sL∞
// algebra: the free graded-commutative algebra on the degree-wise dual,
// truncated by wordlength and degree, with d_k dual to ℓ_k. An action on L
// transports contragrediently.
CdgaModel ce_cochains(const SLAlgebra& l, int wordlength_cap, int degree_cap,
                      const GroupRep* action = nullptr);

}  // namespace mcfix

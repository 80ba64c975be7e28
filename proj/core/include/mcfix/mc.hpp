#pragma once

#include "mcfix/cdga.hpp"

namespace mcfix {

// Homotopy groups of a Maurer-Cartan space at the zero basepoint:
// π_n = H_n of the (possibly fixed-point) algebra, with the
// Baker-Campbell-Hausdorff group structure on π_1.
struct PiReport {
    struct Entry {
        int degree = 0;
        int dim = 0;
        std::vector<std::string> basis;  // representative cycles, rendered
    };
    int max_degree = 0;
    std::vector<Entry> entries;  // degrees 1..max_degree

    struct Pi1 {
        int dim = 0;
        int nilpotency_class = 1;
        std::vector<std::string> basis;
        // bch_table[i][j] = [bch(h_i, h_j)] in homology coordinates
        std::vector<std::vector<QVec>> bch_table;
    };
    std::optional<Pi1> pi1;

    std::vector<std::string> notes;

    bool trivial() const;
    int dim_at(int degree) const;
};

// Curvature Σ_{k<=arity_cap} (1/k!) ℓ_k(z,...,z) of a degree-0 element.
GradedVec curvature(const SLAlgebra& l, const GradedVec& z);

bool is_maurer_cartan(const SLAlgebra& l, const GradedVec& z);

// Twisted algebra L^τ: ℓ_k^τ(x_1,...,x_k) = Σ_j (1/j!) ℓ_{k+j}(τ,..,τ,x_1,...,x_k),
// truncated to positive degrees afterwards. Refuses non-Maurer-Cartan τ.
SLAlgebra twist(const SLAlgebra& l, const GradedVec& tau);

// π_*(MC(L)) for positively graded L; dg Lie input is suspended first, so
// π_n = H_{n-1} of the dg Lie carrier.
PiReport homotopy_groups(const SLAlgebra& l, int max_degree);

// Truncated BCH product of two degree-1 elements (shifted convention),
// computed by expanding log(e^x e^y) in the free associative algebra and
// pushing each word through right-normed brackets with the
// Dynkin-Specht-Wever 1/n factor.
GradedVec bch(const SLAlgebra& l, const GradedVec& x, const GradedVec& y, int class_cap);

// π_*(MC(L)^{hG}) ≅ (π_* MC(L))^G: computes H_*(L^G) and, independently,
// the fixed part of the induced action on H_*(L); the two dimension counts
// are asserted equal before reporting.
PiReport homotopy_fixed_pi(const GSLAlgebra& gl, int max_degree);

// Model of the homotopy fixed points of a mapping space: homotopy groups of
// (A ⊗ L)^G under the diagonal action, guarded by the connectivity bound.
PiReport mapping_space_pi(const CdgaModel& a, const GSLAlgebra& gl, int max_degree);

// Action carried along the degree +1 shift (same matrices, re-keyed).
GroupRep suspend_action(const GroupRep& rep);

}  // namespace mcfix

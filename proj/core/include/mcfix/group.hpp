#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcfix/graded.hpp"

namespace mcfix {

// Finite group given by its multiplication table; element 0 is the identity.
// Construction verifies the table is an honest group by enumeration.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    int order() const { return int(table_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int inverse(int a) const { return inv_[a]; }
    const std::vector<std::vector<int>>& table() const { return table_; }

    // Names for rendering; defaults to g0, g1, ... unless set by a preset.
    const std::string& element_name(int g) const { return names_[g]; }
    void set_element_names(std::vector<std::string> names);

    static FiniteGroup cyclic(int n);
    static FiniteGroup symmetric(int m);  // order m!, m <= 5
    // Sign character when the group has a canonical one (cyclic even order,
    // symmetric groups); values in {+1,-1} per element.
    std::optional<std::vector<int>> sign_character() const;

    bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
    std::vector<std::string> names_;
};

// Linear action of a finite group on a graded module: one degree-0 map per
// element. `homomorphism_ok` records whether matrix(e) = 1 and
// matrix(g)matrix(h) = matrix(gh) hold exactly; scalar "actions" that fail
// this (a generator sent to 2·id under Z2) are still usable for fixed-point
// computations, which only intersect kernels of matrix(g) - 1.
class GroupRep {
public:
    GroupRep(FiniteGroup group, GradedModule carrier, std::vector<LinearMap> matrices);

    static GroupRep trivial(FiniteGroup group, const GradedModule& carrier);
    // Generator images are closed under multiplication to cover the group;
    // throws SchemaError when the given elements do not generate.
    static GroupRep from_generators(FiniteGroup group, GradedModule carrier,
                                    const std::map<int, LinearMap>& images);

    const FiniteGroup& group() const { return group_; }
    const GradedModule& carrier() const { return carrier_; }
    const LinearMap& matrix(int g) const { return mats_[g]; }
    bool homomorphism_ok() const { return homomorphism_ok_; }

    // Averaging projector (1/|G|) Σ_g matrix(g); requires homomorphism_ok.
    QMatrix reynolds(int degree) const;
    // Basis of the fixed subspace ∩_g ker(matrix(g) - 1) in one degree.
    std::vector<QVec> invariants(int degree) const;
    std::vector<QVec> invariants_within(int degree, const std::vector<QVec>& subspace) const;

    struct Coinvariants {
        int dim = 0;
        std::vector<int> representative_indices;  // basis vectors spanning V_G
    };
    Coinvariants coinvariants(int degree) const;

    // True when matrix(g) commutes with d in every degree.
    bool commutes_with(const LinearMap& d, std::string* witness = nullptr) const;

private:
    FiniteGroup group_;
    GradedModule carrier_;
    std::vector<LinearMap> mats_;
    bool homomorphism_ok_ = true;
};

// Matrices of the induced action on homology representatives:
// g·[x] = [g·x], solved against the cycle/boundary decomposition.
std::vector<QMatrix> induced_homology_action(const GroupRep& rep, const HomologyBasis& h);

// Fixed subspace of a list of square matrices acting on the same space.
std::vector<QVec> fixed_space(const std::vector<QMatrix>& mats, int dim);

struct InvariantHomologyReport {
    bool ok = true;
    struct Row {
        int degree;
        int dim_h_of_invariants;  // dim H_n(V^G)
        int dim_invariants_of_h;  // dim (H_n V)^G
    };
    std::vector<Row> rows;
    std::string witness;
    std::string format() const;
};

// Checks dim H_n(V^G) = dim (H_n V)^G degree-wise via two independent
// computations. Throws StructuralError when the action is not a chain map.
InvariantHomologyReport invariant_homology_check(const ChainComplex& cx, const GroupRep& rep,
                                                 const std::vector<int>& degrees);

}  // namespace mcfix

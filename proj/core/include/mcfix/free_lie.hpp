#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcfix/group.hpp"
#include "mcfix/sl_algebra.hpp"

namespace mcfix {

// Free graded Lie algebra 𝕃(generators), truncated at max_weight (that is,
// the nilpotent quotient 𝕃/F^{max_weight+1}).
//
// The construction embeds everything in the tensor algebra, where
// [x,y] := x⊗y - (-1)^{|x||y|} y⊗x; graded corner cases ([x,x] ≠ 0 for odd
// dg Lie generators, [x,x] = 0 for even ones) then come out of the linear
// algebra instead of a basis combinatorics argument. Per weight, candidates
// [g, b] over the previous weight's basis are scanned in a fixed order and
// kept exactly when independent, so the resulting basis and its bracket
// labels are reproducible.
//
// A request in the shifted convention with generator degrees d_i >= 1 builds
// the dg Lie algebra on degrees d_i - 1 and suspends it.
struct FreeLieSpec {
    std::vector<std::pair<std::string, int>> generators;  // label, degree
    int max_weight = 2;
    Convention convention = Convention::DgLie;
};

// Construction record: every basis element is either a generator or a
// bracket [generator, previous element], which is what lets generator-level
// group actions extend along the table.
struct FreeLieAlgebra {
    SLAlgebra algebra;
    struct Node {
        int gen = -1;       // generator index for weight-1 elements
        BasisRef sub{};     // bracketed element for weight >= 2
        int weight = 1;
    };
    std::map<BasisRef, Node> nodes;
    std::vector<BasisRef> generators;  // weight-1 refs in generator order
};

FreeLieAlgebra free_lie_with_data(const FreeLieSpec& spec);

inline SLAlgebra free_lie(const FreeLieSpec& spec) { return free_lie_with_data(spec).algebra; }

// Extends images of the Lie generators to the whole algebra along the
// brackets, then closes over the group; generator_images maps a group
// element to the image vector of each Lie generator.
GroupRep induced_action(const FreeLieAlgebra& fl, const FiniteGroup& g,
                        const std::map<int, std::vector<GradedVec>>& generator_images);

// Enumeration guard shared with the CLI: total tensor words touched.
long free_lie_cell_count(const FreeLieSpec& spec);

}  // namespace mcfix

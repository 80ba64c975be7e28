#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcfix/rational.hpp"

namespace mcfix::testoracle {

// Independent expansion of bracket expressions into the tensor algebra on
// named generators, with [x,y] = xy - (-1)^{|x||y|} yx on homogeneous terms.
// This is deliberately separate from the free-Lie implementation in core so
// the two can be played against each other.
//
// Grammar:  expr  := term (('+'|'-') term)*
//           term  := [rational] atom
//           atom  := generator | '[' expr ',' expr ']' | '(' expr ')'
struct TensorElement {
    // word (generator indices) -> coefficient; words may mix lengths
    std::map<std::vector<int>, Rat> words;

    bool zero() const { return words.empty(); }
    TensorElement& add(const TensorElement& o, const Rat& scale);
};

class LieOracle {
public:
    explicit LieOracle(std::vector<std::pair<std::string, int>> generators);

    TensorElement expand(const std::string& expr) const;
    int word_degree(const std::vector<int>& w) const;

private:
    std::vector<std::pair<std::string, int>> gens_;
};

TensorElement bracket(const LieOracle& o, const TensorElement& a, const TensorElement& b);

// exact rank of the span of the given elements (over the word coordinates)
int span_rank(const std::vector<TensorElement>& elems);
bool same_span(const std::vector<TensorElement>& a, const std::vector<TensorElement>& b);
bool proportional(const TensorElement& a, const TensorElement& b);

}  // namespace mcfix::testoracle

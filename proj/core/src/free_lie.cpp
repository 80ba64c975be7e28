#include "mcfix/free_lie.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mcfix {

namespace {

using Word = std::vector<int>;
using TensorVec = std::map<Word, Rat>;  // sparse element of one tensor weight

TensorVec concat(const TensorVec& a, const TensorVec& b, const Rat& scale) {
    TensorVec out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            Rat c = ca * cb * scale;
            auto it = out.find(w);
            if (it == out.end())
                out.emplace(std::move(w), std::move(c));
            else {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

TensorVec tensor_bracket(const TensorVec& a, const TensorVec& b, int deg_a, int deg_b) {
    TensorVec out = concat(a, b, 1);
    Rat sgn = (deg_a * deg_b) % 2 == 0 ? -1 : 1;  // -(-1)^{|a||b|}
    for (const auto& [w, c] : concat(b, a, sgn)) {
        auto it = out.find(w);
        if (it == out.end())
            out.emplace(w, c);
        else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

struct LieElement {
    std::string label;
    int degree = 0;
    int weight = 0;
    TensorVec tensor;
    int gen = -1;      // construction: generator index (weight 1)
    int sub_elt = -1;  // construction: flat index of the bracketed element
};

struct WordSpace {
    // coordinate chart for words of one (weight, degree) slot
    std::vector<Word> words;
    std::map<Word, int> index;
};

QVec tensor_coords(const TensorVec& t, const WordSpace& ws) {
    QVec v(ws.words.size());
    for (const auto& [w, c] : t) {
        auto it = ws.index.find(w);
        if (it == ws.index.end()) throw StructuralError("tensor word outside its coordinate chart");
        v[it->second] = c;
    }
    return v;
}

FreeLieAlgebra build_dglie(const FreeLieSpec& spec) {
    int g = int(spec.generators.size());
    if (g == 0) throw SchemaError("free Lie algebra needs at least one generator");
    if (spec.max_weight < 1) throw SchemaError("max_weight must be >= 1");
    for (const auto& [label, degree] : spec.generators)
        if (degree < 0) throw SchemaError("dg Lie generator degrees must be >= 0");

    // word coordinate charts per (weight, degree)
    std::map<std::pair<int, int>, WordSpace> charts;
    {
        std::vector<Word> current{{}};
        for (int w = 1; w <= spec.max_weight; ++w) {
            std::vector<Word> next;
            for (const Word& word : current)
                for (int i = 0; i < g; ++i) {
                    Word e = word;
                    e.push_back(i);
                    next.push_back(std::move(e));
                }
            for (const Word& word : next) {
                int d = 0;
                for (int i : word) d += spec.generators[i].second;
                auto& ws = charts[{w, d}];
                ws.index.emplace(word, int(ws.words.size()));
                ws.words.push_back(word);
            }
            current = std::move(next);
        }
    }

    std::vector<LieElement> elements;           // all chosen basis elements, weight ascending
    std::vector<std::vector<int>> by_weight(spec.max_weight + 1);
    std::map<std::pair<int, int>, SpanBuilder> spans;
    auto span_for = [&](int w, int d) -> SpanBuilder& {
        auto key = std::make_pair(w, d);
        auto it = spans.find(key);
        if (it == spans.end())
            it = spans.emplace(key, SpanBuilder(int(charts[key].words.size()))).first;
        return it->second;
    };
    auto try_add = [&](LieElement e) {
        if (e.tensor.empty()) return;
        auto& sb = span_for(e.weight, e.degree);
        if (!sb.insert(tensor_coords(e.tensor, charts[{e.weight, e.degree}]))) return;
        by_weight[e.weight].push_back(int(elements.size()));
        elements.push_back(std::move(e));
    };

    for (int i = 0; i < g; ++i) {
        LieElement e;
        e.label = spec.generators[i].first;
        e.degree = spec.generators[i].second;
        e.weight = 1;
        e.tensor[{i}] = 1;
        e.gen = i;
        try_add(std::move(e));
    }
    if (int(elements.size()) != g) throw SchemaError("duplicate generator labels");

    auto bracket_elem = [&](int gi, int ei) {
        const auto& gen = elements[by_weight[1][gi]];
        const auto& b = elements[ei];
        LieElement e;
        e.label = "[" + gen.label + "," + b.label + "]";
        e.degree = gen.degree + b.degree;
        e.weight = 1 + b.weight;
        e.tensor = tensor_bracket(gen.tensor, b.tensor, gen.degree, b.degree);
        e.gen = gi;
        e.sub_elt = ei;
        return e;
    };

    if (spec.max_weight >= 2) {
        // mixed pairs first so the mixed bracket heads the weight-2 basis
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j) try_add(bracket_elem(i, by_weight[1][j]));
        for (int i = 0; i < g; ++i) try_add(bracket_elem(i, by_weight[1][i]));
    }
    for (int w = 3; w <= spec.max_weight; ++w)
        for (int ei : by_weight[w - 1])
            for (int i = 0; i < g; ++i) try_add(bracket_elem(i, ei));

    // carrier ordered by (weight, construction order) within each degree
    GradedModule carrier;
    std::vector<BasisRef> refs(elements.size());
    for (size_t k = 0; k < elements.size(); ++k)
        refs[k] = {elements[k].degree, carrier.add(elements[k].degree, elements[k].label)};

    int degree_cap = 0;
    for (const auto& e : elements) degree_cap = std::max(degree_cap, e.degree);
    SLAlgebra L(carrier, Convention::DgLie, 2, degree_cap);
    for (size_t k = 0; k < elements.size(); ++k) L.set_weight(refs[k], elements[k].weight);

    // bracket table on canonical pairs, expanded in the tensor algebra and
    // solved back against the chosen basis of the target (weight, degree)
    for (size_t a = 0; a < elements.size(); ++a)
        for (size_t b = a; b < elements.size(); ++b) {
            size_t lo = a, hi = b;
            if (refs[b] < refs[a]) std::swap(lo, hi);
            const auto& x = elements[lo];
            const auto& y = elements[hi];
            int w = x.weight + y.weight;
            int d = x.degree + y.degree;
            QVec value(carrier.dim(d));
            if (w <= spec.max_weight) {
                TensorVec t = tensor_bracket(x.tensor, y.tensor, x.degree, y.degree);
                if (!t.empty()) {
                    // columns: basis elements of this degree, in carrier order
                    std::vector<QVec> cols;
                    std::vector<int> positions;
                    const auto& chart = charts[{w, d}];
                    for (size_t k = 0; k < elements.size(); ++k)
                        if (elements[k].degree == d && elements[k].weight == w) {
                            cols.push_back(tensor_coords(elements[k].tensor, chart));
                            positions.push_back(refs[k].index);
                        }
                    auto coords = solve_linear(QMatrix::from_columns(cols, int(chart.words.size())),
                                               tensor_coords(t, chart));
                    if (!coords)
                        throw StructuralError("free Lie bracket did not close on the chosen basis");
                    for (size_t k = 0; k < positions.size(); ++k) value[positions[k]] = (*coords)[k];
                }
            }
            if (!is_zero(value)) L.add_bracket({refs[lo], refs[hi]}, std::move(value));
        }

    FreeLieAlgebra out{std::move(L), {}, {}};
    for (size_t k = 0; k < elements.size(); ++k) {
        FreeLieAlgebra::Node node;
        node.weight = elements[k].weight;
        if (elements[k].weight == 1) {
            node.gen = elements[k].gen;
            out.generators.push_back(refs[k]);
        } else {
            node.gen = elements[k].gen;
            node.sub = refs[elements[k].sub_elt];
        }
        out.nodes[refs[k]] = node;
    }
    return out;
}

}  // namespace

long free_lie_cell_count(const FreeLieSpec& spec) {
    long g = long(spec.generators.size());
    long total = 0, layer = 1;
    for (int w = 1; w <= spec.max_weight; ++w) {
        layer *= g;
        total += layer;
        if (total > (1L << 40)) return total;
    }
    return total;
}

FreeLieAlgebra free_lie_with_data(const FreeLieSpec& spec) {
    if (spec.convention == Convention::DgLie) return build_dglie(spec);
    FreeLieSpec down = spec;
    down.convention = Convention::DgLie;
    for (auto& [label, degree] : down.generators) {
        if (degree < 1) throw SchemaError("shifted free Lie generators need degree >= 1");
        degree -= 1;
    }
    FreeLieAlgebra fl = build_dglie(down);
    FreeLieAlgebra up{fl.algebra.suspend(), {}, {}};
    for (const auto& [ref, node] : fl.nodes) {
        FreeLieAlgebra::Node n = node;
        if (n.weight > 1) n.sub.degree += 1;
        up.nodes[{ref.degree + 1, ref.index}] = n;
    }
    for (const auto& ref : fl.generators) up.generators.push_back({ref.degree + 1, ref.index});
    return up;
}

GroupRep induced_action(const FreeLieAlgebra& fl, const FiniteGroup& g,
                        const std::map<int, std::vector<GradedVec>>& generator_images) {
    const SLAlgebra& L = fl.algebra;
    const GradedModule& carrier = L.carrier();
    std::map<int, LinearMap> images;
    for (const auto& [elt, gen_imgs] : generator_images) {
        if (gen_imgs.size() != fl.generators.size())
            throw SchemaError("action must give an image for every generator");
        // images per basis element, recursing along the construction tree
        std::map<BasisRef, GradedVec> image;
        std::function<const GradedVec&(const BasisRef&)> image_of = [&](const BasisRef& b) -> const GradedVec& {
            auto it = image.find(b);
            if (it != image.end()) return it->second;
            const auto& node = fl.nodes.at(b);
            GradedVec v{0, {}};
            if (node.weight == 1) {
                v = gen_imgs[node.gen];
                if (v.degree != b.degree || int(v.coords.size()) != carrier.dim(b.degree))
                    throw SchemaError("generator image has the wrong degree or dimension");
            } else {
                // b appears in ℓ(gen, sub) with a unit coefficient up to sign
                const BasisRef gref = fl.generators[node.gen];
                GradedVec rel = L.eval_basis({gref, node.sub});
                Rat c = rel.coords[b.index];
                if (c == 0) throw StructuralError("free Lie construction node does not rebuild its element");
                GradedVec img = L.eval({image_of(gref), image_of(node.sub)});
                for (auto& e : img.coords) e /= c;
                v = std::move(img);
            }
            return image.emplace(b, std::move(v)).first->second;
        };
        LinearMap f(0);
        for (int n : carrier.degrees()) {
            QMatrix block(carrier.dim(n), carrier.dim(n));
            for (int j = 0; j < carrier.dim(n); ++j) {
                const GradedVec& img = image_of({n, j});
                for (int i = 0; i < carrier.dim(n); ++i) block.at(i, j) = img.coords[i];
            }
            f.set_block(n, std::move(block));
        }
        images[elt] = std::move(f);
    }
    return GroupRep::from_generators(g, carrier, images);
}

}  // namespace mcfix

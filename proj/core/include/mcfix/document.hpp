#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcfix/cdga.hpp"
#include "mcfix/free_lie.hpp"

namespace mcfix {

// A linear combination of named basis elements, e.g. "u1 + u2", "-1/2 y".
struct Combo {
    std::vector<std::pair<Rat, std::string>> terms;
    bool zero() const { return terms.empty(); }
};

std::string combo_str(const Combo& c);
Combo parse_combo(const std::string& s, int line = 0);

// One structured input document: group, algebra, optional action and CDGA,
// caps. Parsed from and serialized to a canonical plain-text format; the
// serializer output of a parsed canonical document is byte-identical.
struct ProblemDocument {
    // [group]
    std::optional<std::string> group_preset;  // Z2, Z3, Z4, Z6, S3, S4
    std::optional<std::vector<std::vector<int>>> group_table;

    // [algebra]
    Convention convention = Convention::DgLie;
    bool free_lie_type = true;
    std::vector<std::pair<std::string, int>> generators;  // free-lie: label:degree
    std::vector<std::pair<std::string, int>> basis;       // explicit
    std::vector<std::pair<std::string, int>> weights;     // explicit, optional
    struct BracketEntry {
        std::vector<std::string> args;
        Combo value;
    };
    std::vector<BracketEntry> brackets;  // explicit; arity 1 = differential

    // [action]: images per group element (by name), per basis label
    struct ActionImage {
        std::string element;
        std::vector<std::pair<std::string, Combo>> images;
    };
    std::vector<ActionImage> action;

    // [cdga], optional; unit "1" in degree 0 implicit
    bool has_cdga = false;
    std::vector<std::pair<std::string, int>> cdga_basis;
    std::vector<BracketEntry> cdga_products;       // args of size 2
    std::vector<BracketEntry> cdga_differentials;  // args of size 1
    std::vector<ActionImage> cdga_action;

    // [caps]
    int max_degree = 6;
    int max_weight = 3;
    int arity = 3;
};

ProblemDocument parse_document(const std::string& text);
std::string serialize_document(const ProblemDocument& doc);

FiniteGroup group_preset(const std::string& name);

// Everything the commands work with, constructed and validated.
struct BuiltProblem {
    FiniteGroup group;
    GSLAlgebra algebra;  // trivial action when the document has none
    std::optional<FreeLieAlgebra> free_data;
    std::optional<CdgaModel> cdga;
};

BuiltProblem build_problem(const ProblemDocument& doc, long max_cells = 5'000'000);

}  // namespace mcfix

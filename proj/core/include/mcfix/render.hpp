#pragma once

#include "mcfix/mc.hpp"

namespace mcfix {

enum class Format { Markdown, Csv, Json };
Format parse_format(const std::string& name);  // md | csv | json

// The invariants table: one row per degree with the ambient basis, its
// images under selected group elements, and the invariant basis.
struct InvariantsTable {
    std::vector<std::string> image_columns;  // group element names
    struct Row {
        int degree;
        int ambient_dim;
        int invariant_dim;
        std::vector<std::string> ambient_basis;
        std::vector<std::vector<std::string>> images;  // [column][basis index]
        std::vector<std::string> invariant_basis;
    };
    std::vector<Row> rows;
};

InvariantsTable invariants_table(const GSLAlgebra& gl, int max_degree,
                                 const std::vector<int>& image_elements);

std::string render_invariants(const InvariantsTable& table, Format fmt);
std::string render_pi(const PiReport& report, Format fmt);

}  // namespace mcfix

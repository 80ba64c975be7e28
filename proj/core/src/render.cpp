#include "mcfix/render.hpp"

#include <json.hpp>
#include <sstream>

namespace mcfix {

Format parse_format(const std::string& name) {
    if (name == "md" || name == "markdown") return Format::Markdown;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw SchemaError("unknown format '" + name + "' (use md, csv or json)");
}

InvariantsTable invariants_table(const GSLAlgebra& gl, int max_degree,
                                 const std::vector<int>& image_elements) {
    const GradedModule& m = gl.algebra.carrier();
    InvariantsTable t;
    for (int e : image_elements) t.image_columns.push_back(gl.action.group().element_name(e));
    for (int n = 1; n <= max_degree; ++n) {
        InvariantsTable::Row row;
        row.degree = n;
        row.ambient_dim = m.dim(n);
        row.ambient_basis = m.labels(n);
        for (int e : image_elements) {
            std::vector<std::string> col;
            const QMatrix* b = gl.action.matrix(e).block(n);
            for (int j = 0; j < m.dim(n); ++j)
                col.push_back(b ? format_combination(m, n, b->column(j)) : "0");
            row.images.push_back(std::move(col));
        }
        for (const QVec& v : gl.action.invariants(n)) row.invariant_basis.push_back(format_combination(m, n, v));
        row.invariant_dim = int(row.invariant_basis.size());
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_invariants(const InvariantsTable& t, Format fmt) {
    if (fmt == Format::Markdown) {
        std::string out = "| degree | dim | basis |";
        for (const auto& c : t.image_columns) out += " image under " + c + " |";
        out += " invariant dim | invariant basis |\n";
        out += "|---|---|---|";
        for (size_t i = 0; i < t.image_columns.size(); ++i) out += "---|";
        out += "---|---|\n";
        for (const auto& r : t.rows) {
            out += "| " + std::to_string(r.degree) + " | " + std::to_string(r.ambient_dim) + " | " +
                   join(r.ambient_basis, "; ") + " |";
            for (const auto& col : r.images) out += " " + join(col, "; ") + " |";
            out += " " + std::to_string(r.invariant_dim) + " | " + join(r.invariant_basis, "; ") + " |\n";
        }
        return out;
    }
    if (fmt == Format::Csv) {
        std::string out = "degree,dim,basis";
        for (const auto& c : t.image_columns) out += ",image under " + csv_quote(c);
        out += ",invariant dim,invariant basis\n";
        for (const auto& r : t.rows) {
            out += std::to_string(r.degree) + "," + std::to_string(r.ambient_dim) + "," +
                   csv_quote(join(r.ambient_basis, "; "));
            for (const auto& col : r.images) out += "," + csv_quote(join(col, "; "));
            out += "," + std::to_string(r.invariant_dim) + "," + csv_quote(join(r.invariant_basis, "; ")) + "\n";
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "invariants";
    j["image_columns"] = t.image_columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["degree"] = r.degree;
        row["dim"] = r.ambient_dim;
        row["basis"] = r.ambient_basis;
        row["images"] = r.images;
        row["invariant_dim"] = r.invariant_dim;
        row["invariant_basis"] = r.invariant_basis;
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::string render_pi(const PiReport& report, Format fmt) {
    if (fmt == Format::Json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["kind"] = "pi";
        j["max_degree"] = report.max_degree;
        j["groups"] = nlohmann::ordered_json::array();
        for (const auto& e : report.entries) {
            nlohmann::ordered_json entry;
            entry["degree"] = e.degree;
            entry["dim"] = e.dim;
            entry["basis"] = e.basis;
            j["groups"].push_back(std::move(entry));
        }
        if (report.pi1) {
            nlohmann::ordered_json p;
            p["dim"] = report.pi1->dim;
            p["nilpotency_class"] = report.pi1->nilpotency_class;
            p["basis"] = report.pi1->basis;
            auto table = nlohmann::ordered_json::array();
            for (const auto& row : report.pi1->bch_table) {
                auto jrow = nlohmann::ordered_json::array();
                for (const auto& v : row) {
                    auto jv = nlohmann::ordered_json::array();
                    for (const auto& c : v) jv.push_back(rat_str(c));
                    jrow.push_back(std::move(jv));
                }
                table.push_back(std::move(jrow));
            }
            p["bch_table"] = std::move(table);
            j["pi1"] = std::move(p);
        }
        j["notes"] = report.notes;
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    if (report.trivial()) {
        out << "homotopy groups: trivial in degrees 1.." << report.max_degree << " (a point)\n";
    } else {
        for (const auto& e : report.entries) {
            if (e.dim == 0) continue;
            out << "pi_" << e.degree << ": dim " << e.dim;
            if (!e.basis.empty()) out << "  [" << join(e.basis, "; ") << "]";
            out << "\n";
        }
        if (report.pi1 && report.pi1->dim > 0) {
            out << "pi_1 group: nilpotency class " << report.pi1->nilpotency_class;
            if (report.pi1->nilpotency_class == 1) out << " (abelian)";
            out << "\n";
        }
    }
    for (const auto& n : report.notes) out << "note: " << n << "\n";
    return out.str();
}

}  // namespace mcfix

#include "mcfix/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mcfix {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

bool is_label_char(char c) {
    return std::isalnum(uint8_t(c)) || c == '_' || c == '[' || c == ']' || c == ',' || c == '^' ||
           c == '(' || c == ')' || c == '\xe2' || c == '\x8a' || c == '\x97';  // allow ⊗ bytes
}

}  // namespace

std::string combo_str(const Combo& c) {
    if (c.terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < c.terms.size(); ++i) {
        const auto& [coef, label] = c.terms[i];
        Rat a = abs(coef);
        if (i == 0)
            out += (coef < 0) ? "-" : "";
        else
            out += (coef < 0) ? " - " : " + ";
        if (a != 1) out += rat_str(a) + " ";
        out += label;
    }
    return out;
}

Combo parse_combo(const std::string& s, int line) {
    Combo out;
    if (trim(s) == "0") return out;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(uint8_t(s[pos]))) ++pos;
    };
    bool first = true;
    while (true) {
        skip();
        if (pos == s.size()) break;
        int sign = 1;
        bool saw_op = false;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
            saw_op = true;
            skip();
        }
        if (!first && !saw_op) throw SchemaError("expected '+' or '-' in combination '" + s + "'", line);
        Rat coef = sign;
        if (pos < s.size() && std::isdigit(uint8_t(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && (std::isdigit(uint8_t(s[pos])) || s[pos] == '/')) ++pos;
            try {
                coef *= parse_rat(s.substr(start, pos - start));
            } catch (const std::exception&) {
                throw SchemaError("bad coefficient in combination '" + s + "'", line);
            }
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                skip();
            }
        }
        size_t start = pos;
        int depth = 0;
        while (pos < s.size()) {
            char c = s[pos];
            if (c == '[' || c == '(') ++depth;
            if (c == ']' || c == ')') --depth;
            if ((c == '+' || c == '-' || std::isspace(uint8_t(c))) && depth == 0) break;
            if (!is_label_char(c)) throw SchemaError("unexpected character in combination '" + s + "'", line);
            ++pos;
        }
        std::string label = s.substr(start, pos - start);
        if (label.empty()) throw SchemaError("expected a basis label in combination '" + s + "'", line);
        out.terms.push_back({coef, label});
        first = false;
    }
    return out;
}

namespace {

std::vector<std::pair<std::string, int>> parse_label_degrees(const std::string& v, int line) {
    std::vector<std::pair<std::string, int>> out;
    for (std::string piece : split(v, ',')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        auto colon = piece.rfind(':');
        if (colon == std::string::npos) throw SchemaError("expected label:degree in '" + piece + "'", line);
        std::string label = trim(piece.substr(0, colon));
        int degree;
        try {
            degree = std::stoi(piece.substr(colon + 1));
        } catch (const std::exception&) {
            throw SchemaError("bad degree in '" + piece + "'", line);
        }
        out.push_back({label, degree});
    }
    if (out.empty()) throw SchemaError("empty label list", line);
    return out;
}

std::string label_degrees_str(const std::vector<std::pair<std::string, int>>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].first + ":" + std::to_string(v[i].second);
    }
    return out;
}

bool parse_tuple_entry(const std::string& line_text, const std::string& keyword,
                       ProblemDocument::BracketEntry* out, int line) {
    std::string t = trim(line_text);
    if (t.rfind(keyword, 0) != 0) return false;
    size_t after = keyword.size();
    while (after < t.size() && std::isspace(uint8_t(t[after]))) ++after;
    if (after >= t.size() || t[after] != '(') return false;
    size_t close = t.find(')', after);
    if (close == std::string::npos) throw SchemaError("missing ')' in " + keyword + " entry", line);
    out->args.clear();
    for (std::string arg : split(t.substr(after + 1, close - after - 1), ',')) {
        arg = trim(arg);
        if (arg.empty()) throw SchemaError("empty argument in " + keyword + " entry", line);
        out->args.push_back(arg);
    }
    size_t eq = t.find('=', close);
    if (eq == std::string::npos) throw SchemaError("expected '=' in " + keyword + " entry", line);
    out->value = parse_combo(trim(t.substr(eq + 1)), line);
    return true;
}

ProblemDocument::ActionImage parse_action_line(const std::string& t, int line) {
    size_t colon = t.find(':');
    if (colon == std::string::npos)
        throw SchemaError("expected '<element>: label -> image, ...'", line);
    ProblemDocument::ActionImage img;
    img.element = trim(t.substr(0, colon));
    if (img.element.empty()) throw SchemaError("missing group element name in action line", line);
    for (std::string piece : split(t.substr(colon + 1), ',')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        size_t arrow = piece.find("->");
        if (arrow == std::string::npos) throw SchemaError("expected 'label -> image' in action line", line);
        std::string label = trim(piece.substr(0, arrow));
        img.images.push_back({label, parse_combo(trim(piece.substr(arrow + 2)), line)});
    }
    if (img.images.empty()) throw SchemaError("action line has no images", line);
    return img;
}

std::string action_line_str(const ProblemDocument::ActionImage& a) {
    std::string out = a.element + ": ";
    for (size_t i = 0; i < a.images.size(); ++i) {
        if (i) out += ", ";
        out += a.images[i].first + " -> " + combo_str(a.images[i].second);
    }
    return out;
}

}  // namespace

ProblemDocument parse_document(const std::string& text) {
    ProblemDocument doc;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string t = raw;
        size_t hash = t.find('#');
        if (hash != std::string::npos) t = t.substr(0, hash);
        t = trim(t);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw SchemaError("unterminated section header", line);
            section = t.substr(1, t.size() - 2);
            if (section != "group" && section != "algebra" && section != "action" && section != "cdga" &&
                section != "caps")
                throw SchemaError("unknown section [" + section + "]", line);
            if (section == "cdga") doc.has_cdga = true;
            continue;
        }
        if (section.empty()) throw SchemaError("content before the first section", line);

        if (section == "action") {
            doc.action.push_back(parse_action_line(t, line));
            continue;
        }
        if (section == "cdga") {
            ProblemDocument::BracketEntry entry;
            if (parse_tuple_entry(t, "product", &entry, line)) {
                if (entry.args.size() != 2) throw SchemaError("product entries take two arguments", line);
                doc.cdga_products.push_back(std::move(entry));
                continue;
            }
            if (parse_tuple_entry(t, "d", &entry, line)) {
                if (entry.args.size() != 1) throw SchemaError("differential entries take one argument", line);
                doc.cdga_differentials.push_back(std::move(entry));
                continue;
            }
            if (t.rfind("action ", 0) == 0) {
                doc.cdga_action.push_back(parse_action_line(trim(t.substr(7)), line));
                continue;
            }
            size_t eq = t.find('=');
            if (eq == std::string::npos) throw SchemaError("expected 'key = value'", line);
            std::string key = trim(t.substr(0, eq));
            if (key == "basis")
                doc.cdga_basis = parse_label_degrees(trim(t.substr(eq + 1)), line);
            else
                throw SchemaError("unknown cdga key '" + key + "'", line);
            continue;
        }
        if (section == "algebra") {
            ProblemDocument::BracketEntry entry;
            if (parse_tuple_entry(t, "bracket", &entry, line)) {
                doc.brackets.push_back(std::move(entry));
                continue;
            }
        }

        size_t eq = t.find('=');
        if (eq == std::string::npos) throw SchemaError("expected 'key = value'", line);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));

        if (section == "group") {
            if (key == "preset")
                doc.group_preset = value;
            else if (key == "table") {
                std::vector<std::vector<int>> table;
                for (std::string row : split(value, ';')) {
                    std::vector<int> r;
                    std::istringstream rs(row);
                    int x;
                    while (rs >> x) r.push_back(x);
                    if (!r.empty()) table.push_back(std::move(r));
                }
                if (table.empty()) throw SchemaError("empty group table", line);
                doc.group_table = std::move(table);
            } else
                throw SchemaError("unknown group key '" + key + "'", line);
        } else if (section == "algebra") {
            if (key == "convention") {
                if (value == "dglie")
                    doc.convention = Convention::DgLie;
                else if (value == "shifted")
                    doc.convention = Convention::Shifted;
                else
                    throw SchemaError("convention must be dglie or shifted", line);
            } else if (key == "type") {
                if (value == "free-lie")
                    doc.free_lie_type = true;
                else if (value == "explicit")
                    doc.free_lie_type = false;
                else
                    throw SchemaError("type must be free-lie or explicit", line);
            } else if (key == "generators")
                doc.generators = parse_label_degrees(value, line);
            else if (key == "basis")
                doc.basis = parse_label_degrees(value, line);
            else if (key == "weights")
                doc.weights = parse_label_degrees(value, line);
            else
                throw SchemaError("unknown algebra key '" + key + "'", line);
        } else if (section == "caps") {
            int v;
            try {
                v = std::stoi(value);
            } catch (const std::exception&) {
                throw SchemaError("caps entries must be integers", line);
            }
            if (v <= 0) throw SchemaError("caps must be positive", line);
            if (key == "max_degree")
                doc.max_degree = v;
            else if (key == "max_weight")
                doc.max_weight = v;
            else if (key == "arity")
                doc.arity = v;
            else
                throw SchemaError("unknown caps key '" + key + "'", line);
        }
    }
    if (!doc.group_preset && !doc.group_table) throw SchemaError("missing [group] section");
    if (doc.free_lie_type && doc.generators.empty() && doc.basis.empty())
        throw SchemaError("missing algebra generators");
    if (!doc.free_lie_type && doc.basis.empty()) throw SchemaError("explicit algebras need a basis");
    return doc;
}

std::string serialize_document(const ProblemDocument& doc) {
    std::string out;
    out += "[group]\n";
    if (doc.group_preset) out += "preset = " + *doc.group_preset + "\n";
    if (doc.group_table) {
        out += "table = ";
        for (size_t i = 0; i < doc.group_table->size(); ++i) {
            if (i) out += "; ";
            for (size_t j = 0; j < (*doc.group_table)[i].size(); ++j) {
                if (j) out += " ";
                out += std::to_string((*doc.group_table)[i][j]);
            }
        }
        out += "\n";
    }
    out += "\n[algebra]\n";
    out += "convention = " + convention_name(doc.convention) + "\n";
    out += std::string("type = ") + (doc.free_lie_type ? "free-lie" : "explicit") + "\n";
    if (!doc.generators.empty()) out += "generators = " + label_degrees_str(doc.generators) + "\n";
    if (!doc.basis.empty()) out += "basis = " + label_degrees_str(doc.basis) + "\n";
    if (!doc.weights.empty()) out += "weights = " + label_degrees_str(doc.weights) + "\n";
    for (const auto& b : doc.brackets) {
        out += "bracket (";
        for (size_t i = 0; i < b.args.size(); ++i) {
            if (i) out += ", ";
            out += b.args[i];
        }
        out += ") = " + combo_str(b.value) + "\n";
    }
    if (!doc.action.empty()) {
        out += "\n[action]\n";
        for (const auto& a : doc.action) out += action_line_str(a) + "\n";
    }
    if (doc.has_cdga) {
        out += "\n[cdga]\n";
        if (!doc.cdga_basis.empty()) out += "basis = " + label_degrees_str(doc.cdga_basis) + "\n";
        for (const auto& b : doc.cdga_products)
            out += "product (" + b.args[0] + ", " + b.args[1] + ") = " + combo_str(b.value) + "\n";
        for (const auto& b : doc.cdga_differentials)
            out += "d (" + b.args[0] + ") = " + combo_str(b.value) + "\n";
        for (const auto& a : doc.cdga_action) out += "action " + action_line_str(a) + "\n";
    }
    out += "\n[caps]\n";
    out += "max_degree = " + std::to_string(doc.max_degree) + "\n";
    out += "max_weight = " + std::to_string(doc.max_weight) + "\n";
    out += "arity = " + std::to_string(doc.arity) + "\n";
    return out;
}

FiniteGroup group_preset(const std::string& name) {
    if (name == "Z2") return FiniteGroup::cyclic(2);
    if (name == "Z3") return FiniteGroup::cyclic(3);
    if (name == "Z4") return FiniteGroup::cyclic(4);
    if (name == "Z6") return FiniteGroup::cyclic(6);
    if (name == "S3") {
        FiniteGroup g = FiniteGroup::symmetric(3);
        g.set_element_names({"e", "t23", "t12", "c123", "c132", "t13"});
        return g;
    }
    if (name == "S4") return FiniteGroup::symmetric(4);
    throw SchemaError("unknown group preset '" + name + "' (use Z2, Z3, Z4, Z6, S3, S4 or a table)");
}

namespace {

int element_by_name(const FiniteGroup& g, const std::string& name) {
    for (int e = 0; e < g.order(); ++e)
        if (g.element_name(e) == name) return e;
    throw SchemaError("unknown group element '" + name + "'");
}

GradedVec resolve_combo(const GradedModule& m, const Combo& combo, int expected_degree) {
    GradedVec v{expected_degree, QVec(m.dim(expected_degree))};
    for (const auto& [coef, label] : combo.terms) {
        int idx = m.index_of(expected_degree, label);
        if (idx < 0) {
            for (int n : m.degrees())
                if (m.index_of(n, label) >= 0)
                    throw SchemaError("label '" + label + "' has degree " + std::to_string(n) +
                                      ", expected degree " + std::to_string(expected_degree));
            throw SchemaError("unknown basis label '" + label + "'");
        }
        v.coords[idx] += coef;
    }
    return v;
}

}  // namespace

BuiltProblem build_problem(const ProblemDocument& doc, long max_cells) {
    FiniteGroup group = doc.group_preset ? group_preset(*doc.group_preset) : FiniteGroup(*doc.group_table);

    std::optional<FreeLieAlgebra> free_data;
    std::optional<SLAlgebra> algebra;
    if (doc.free_lie_type) {
        FreeLieSpec spec{doc.generators, doc.max_weight, doc.convention};
        if (free_lie_cell_count(spec) > max_cells)
            throw CapacityError("free Lie enumeration exceeds the cell budget");
        free_data = free_lie_with_data(spec);
        algebra = free_data->algebra;
    } else {
        GradedModule m;
        for (const auto& [label, degree] : doc.basis) m.add(degree, label);
        SLAlgebra l(m, doc.convention, doc.arity, m.max_degree());
        for (const auto& [label, w] : doc.weights) {
            bool found = false;
            for (int n : m.degrees()) {
                int idx = m.index_of(n, label);
                if (idx >= 0) {
                    l.set_weight({n, idx}, w);
                    found = true;
                }
            }
            if (!found) throw SchemaError("weight given for unknown label '" + label + "'");
        }
        for (const auto& entry : doc.brackets) {
            Tuple args;
            for (const auto& label : entry.args) {
                bool found = false;
                for (int n : m.degrees()) {
                    int idx = m.index_of(n, label);
                    if (idx >= 0) {
                        args.push_back({n, idx});
                        found = true;
                        break;
                    }
                }
                if (!found) throw SchemaError("bracket argument '" + label + "' is not a basis label");
            }
            int out_degree = l.bracket_output_degree(args);
            l.add_bracket(args, resolve_combo(m, entry.value, out_degree).coords);
        }
        algebra = std::move(l);
    }

    GroupRep rep = GroupRep::trivial(group, algebra->carrier());
    if (!doc.action.empty()) {
        if (doc.free_lie_type) {
            std::map<int, std::vector<GradedVec>> images;
            for (const auto& a : doc.action) {
                int elt = element_by_name(group, a.element);
                std::vector<GradedVec> per_gen;
                for (const auto& [label, degree] : doc.generators) {
                    const Combo* combo = nullptr;
                    for (const auto& [l2, c] : a.images)
                        if (l2 == label) combo = &c;
                    if (!combo)
                        throw SchemaError("action for '" + a.element + "' misses generator '" + label + "'");
                    per_gen.push_back(resolve_combo(algebra->carrier(), *combo, degree));
                }
                images[elt] = std::move(per_gen);
            }
            rep = induced_action(*free_data, group, images);
        } else {
            std::map<int, LinearMap> images;
            for (const auto& a : doc.action) {
                int elt = element_by_name(group, a.element);
                LinearMap f(0);
                std::map<int, QMatrix> blocks;
                std::map<int, std::vector<bool>> given;
                for (int n : algebra->carrier().degrees()) {
                    blocks[n] = QMatrix(algebra->carrier().dim(n), algebra->carrier().dim(n));
                    given[n].assign(algebra->carrier().dim(n), false);
                }
                for (const auto& [label, combo] : a.images) {
                    bool found = false;
                    for (int n : algebra->carrier().degrees()) {
                        int idx = algebra->carrier().index_of(n, label);
                        if (idx < 0) continue;
                        GradedVec img = resolve_combo(algebra->carrier(), combo, n);
                        for (int i = 0; i < int(img.coords.size()); ++i) blocks[n].at(i, idx) = img.coords[i];
                        given[n][idx] = true;
                        found = true;
                        break;
                    }
                    if (!found) throw SchemaError("action image for unknown label '" + label + "'");
                }
                // labels without an explicit image stay fixed
                for (int n : algebra->carrier().degrees())
                    for (int j = 0; j < algebra->carrier().dim(n); ++j)
                        if (!given[n][j]) blocks[n].at(j, j) = 1;
                for (auto& [n, b] : blocks) f.set_block(n, std::move(b));
                images[elt] = std::move(f);
            }
            rep = GroupRep::from_generators(group, algebra->carrier(), images);
        }
    }

    BuiltProblem out{std::move(group), GSLAlgebra{std::move(*algebra), std::move(rep)}, std::move(free_data),
                     std::nullopt};

    if (doc.has_cdga) {
        GradedModule am;
        am.add(0, "1");
        for (const auto& [label, degree] : doc.cdga_basis) {
            if (degree <= 0) throw SchemaError("cdga basis degrees must be positive (the unit is implicit)");
            am.add(degree, label);
        }
        CdgaModel a(am);
        auto find_ref = [&](const std::string& label) -> BasisRef {
            if (label == "1") return a.unit();
            for (int n : am.degrees()) {
                int idx = am.index_of(n, label);
                if (idx >= 0 && !(n == 0 && idx == a.unit().index)) return {n, idx};
                if (idx >= 0) return {n, idx};
            }
            throw SchemaError("unknown cdga label '" + label + "'");
        };
        for (const auto& entry : doc.cdga_products) {
            BasisRef x = find_ref(entry.args[0]);
            BasisRef y = find_ref(entry.args[1]);
            QVec v = resolve_combo(am, entry.value, x.degree + y.degree).coords;
            a.set_product(x, y, v);
            bool has_sym = false;
            for (const auto& other : doc.cdga_products)
                if (other.args[0] == entry.args[1] && other.args[1] == entry.args[0]) has_sym = true;
            if (!has_sym && !(x == y)) {
                Rat s = ((x.degree * y.degree) & 1) ? -1 : 1;
                a.set_product(y, x, s * v);
            }
        }
        for (const auto& entry : doc.cdga_differentials) {
            BasisRef x = find_ref(entry.args[0]);
            a.set_differential_entry(x, resolve_combo(am, entry.value, x.degree + 1).coords);
        }
        if (!doc.cdga_action.empty()) {
            std::map<int, LinearMap> images;
            for (const auto& act : doc.cdga_action) {
                int elt = element_by_name(out.group, act.element);
                LinearMap f(0);
                std::map<int, QMatrix> blocks;
                for (int n : am.degrees()) blocks[n] = QMatrix::identity(am.dim(n));
                for (const auto& [label, combo] : act.images) {
                    BasisRef ref = find_ref(label);
                    GradedVec img = resolve_combo(am, combo, ref.degree);
                    for (int i = 0; i < am.dim(ref.degree); ++i)
                        blocks[ref.degree].at(i, ref.index) = img.coords[i];
                }
                for (auto& [n, b] : blocks) f.set_block(n, std::move(b));
                images[elt] = std::move(f);
            }
            a.set_action(GroupRep::from_generators(out.group, am, images));
        }
        out.cdga = std::move(a);
    }
    return out;
}

}  // namespace mcfix

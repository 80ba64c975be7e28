#include "mcfix/presets.hpp"

#include <sstream>

namespace mcfix {

namespace {

Combo combo1(const std::string& label, const Rat& coef = 1) {
    Combo c;
    c.terms.push_back({coef, label});
    return c;
}

}  // namespace

ProblemDocument wedge_document() {
    ProblemDocument doc;
    doc.group_preset = "Z2";
    doc.convention = Convention::DgLie;
    doc.free_lie_type = true;
    doc.generators = {{"u1", 1}, {"u2", 1}};
    doc.action.push_back({"r", {{"u1", combo1("u2")}, {"u2", combo1("u1")}}});
    doc.max_degree = 3;
    doc.max_weight = 3;
    doc.arity = 3;
    return doc;
}

ProblemDocument map_s2_wedge_document() {
    ProblemDocument doc;
    doc.group_preset = "Z2";
    doc.convention = Convention::DgLie;
    doc.free_lie_type = true;
    doc.generators = {{"a", 2}, {"b", 2}};
    doc.action.push_back({"r", {{"a", combo1("b")}, {"b", combo1("a")}}});
    doc.has_cdga = true;
    doc.cdga_basis = {{"x", 2}};
    doc.cdga_products.push_back({{"x", "x"}, Combo{}});
    doc.cdga_action.push_back({"r", {{"x", combo1("x", -1)}}});
    doc.max_degree = 7;
    doc.max_weight = 4;
    doc.arity = 3;
    return doc;
}

ProblemDocument cp_document(int n, const Rat& a) {
    ProblemDocument doc;
    doc.group_preset = "Z2";
    doc.convention = Convention::Shifted;
    doc.free_lie_type = false;
    doc.basis = {{"x", 2}, {"y", 2 * n + 1}};
    doc.weights = {{"y", n + 1}};
    ProblemDocument::BracketEntry bracket;
    bracket.args.assign(n + 1, "x");
    bracket.value = combo1("y", inv_factorial(n + 1));
    doc.brackets.push_back(std::move(bracket));
    Rat b = 1;
    for (int k = 0; k <= n; ++k) b *= a;
    doc.action.push_back({"r", {{"x", combo1("x", a)}, {"y", combo1("y", b)}}});
    doc.max_degree = 2 * n + 1;
    doc.max_weight = n + 1;
    doc.arity = n + 1;
    return doc;
}

ProblemDocument sphere_document(int n) {
    ProblemDocument doc;
    doc.group_preset = "Z2";
    doc.convention = Convention::Shifted;
    doc.free_lie_type = false;
    if (n % 2 == 1) {
        doc.basis = {{"x", n}};
        doc.action.push_back({"r", {{"x", combo1("x")}}});
        doc.max_degree = n;
        doc.arity = 2;
    } else {
        doc.basis = {{"x", n}, {"[x,x]", 2 * n - 1}};
        doc.weights = {{"[x,x]", 2}};
        ProblemDocument::BracketEntry bracket;
        bracket.args = {"x", "x"};
        bracket.value = combo1("[x,x]");
        doc.brackets.push_back(std::move(bracket));
        doc.action.push_back({"r", {{"x", combo1("x", -1)}}});
        doc.max_degree = 2 * n - 1;
        doc.arity = 2;
    }
    doc.max_weight = 2;
    return doc;
}

ProblemDocument em_document(int generators, int degree) {
    ProblemDocument doc;
    doc.group_preset = "S3";
    doc.convention = Convention::Shifted;
    doc.free_lie_type = false;
    for (int i = 1; i <= generators; ++i) doc.basis.push_back({"u" + std::to_string(i), degree});
    // the permutation action from a transposition and a 3-cycle
    doc.action.push_back({"t12", {{"u1", combo1("u2")}, {"u2", combo1("u1")}}});
    doc.action.push_back({"c123", {{"u1", combo1("u2")}, {"u2", combo1("u3")}, {"u3", combo1("u1")}}});
    doc.max_degree = degree;
    doc.max_weight = 1;
    doc.arity = 2;
    return doc;
}

std::vector<std::string> preset_names() {
    return {"wedge-s2", "map-s2-s3wedge", "cp-n", "sphere-antipodal", "em-product"};
}

ProblemDocument preset_document(const std::string& name) {
    if (name == "wedge-s2") return wedge_document();
    if (name == "map-s2-s3wedge") return map_s2_wedge_document();
    if (name == "cp-n") return cp_document(2, -1);
    if (name == "sphere-antipodal") return sphere_document(2);
    if (name == "em-product") return em_document(3, 2);
    throw SchemaError("unknown preset '" + name + "'");
}

// ----------------------------------------------------------------- commands

namespace {

std::vector<int> action_elements(const ProblemDocument& doc, const FiniteGroup& g) {
    std::vector<int> out;
    for (const auto& a : doc.action)
        for (int e = 0; e < g.order(); ++e)
            if (g.element_name(e) == a.element) {
                out.push_back(e);
                break;
            }
    return out;
}

// the algebra the invariants/pi commands actually operate on: the tensor
// model with the diagonal action when a CDGA section is present
GSLAlgebra working_algebra(const BuiltProblem& p, const ProblemDocument& doc, int max_degree,
                           std::string* notice) {
    if (!p.cdga) return p.algebra;
    GSLAlgebra shifted = p.algebra.algebra.convention() == Convention::DgLie
                             ? GSLAlgebra{p.algebra.algebra.suspend(), suspend_action(p.algebra.action)}
                             : p.algebra;
    TensorModel t = tensor_model(*p.cdga, shifted.algebra, max_degree, &shifted.action);
    if (t.dropped_nonpositive && notice)
        *notice = "notice: tensor elements of non-positive degree were truncated away";
    if (!t.action) throw StructuralError("tensor model without an action");
    (void)doc;
    return GSLAlgebra{std::move(t.algebra), std::move(*t.action)};
}

}  // namespace

CommandResult cmd_check(const ProblemDocument& doc, long max_cells) {
    BuiltProblem p = build_problem(doc, max_cells);
    std::ostringstream out;
    bool all = true;
    auto line = [&](const std::string& name, bool ok, const std::string& witness) {
        out << name << ": " << (ok ? "ok" : "FAIL");
        if (!ok && !witness.empty()) out << " — " << witness;
        out << "\n";
        all = all && ok;
    };
    line("group", true, "");  // table validity enforced at construction
    line("action-homomorphism", p.algebra.action.homomorphism_ok(),
         "generator images do not close into a homomorphism");
    auto sym = p.algebra.algebra.check_symmetry();
    line("symmetry", sym.ok, sym.witness);
    int n_max = std::min(p.algebra.algebra.arity_cap() + 1, 5);
    auto jac = p.algebra.algebra.check_jacobi(n_max);
    line("jacobi (n <= " + std::to_string(n_max) + ")", jac.ok, jac.witness);
    auto filt = p.algebra.algebra.check_filtration();
    line("filtration", filt.ok, filt.witness);
    auto eq = check_equivariance(p.algebra);
    line("equivariance", eq.ok, eq.witness);
    if (p.cdga) {
        auto rep = check_cdga(*p.cdga);
        line("cdga", rep.ok, rep.ok ? "" : rep.axiom + " at " + rep.witness);
    }
    out << (all ? "overall: pass" : "overall: FAIL") << "\n";
    return {all ? 0 : 2, out.str()};
}

CommandResult cmd_invariants(const ProblemDocument& doc, int max_degree, Format fmt, long max_cells) {
    BuiltProblem p = build_problem(doc, max_cells);
    std::string notice;
    GSLAlgebra gl = working_algebra(p, doc, max_degree, &notice);
    std::vector<int> cols = action_elements(doc, p.group);
    InvariantsTable table = invariants_table(gl, max_degree, cols);
    std::string out = render_invariants(table, fmt);
    if (!notice.empty() && fmt != Format::Json) out += notice + "\n";
    return {0, std::move(out)};
}

CommandResult cmd_pi(const ProblemDocument& doc, int max_degree, Format fmt, long max_cells) {
    BuiltProblem p = build_problem(doc, max_cells);
    PiReport rep = p.cdga ? mapping_space_pi(*p.cdga, p.algebra, max_degree)
                          : homotopy_fixed_pi(p.algebra, max_degree);
    return {0, render_pi(rep, fmt)};
}

RetractionTarget parse_retraction_target(const std::string& spec, const FiniteGroup& g) {
    std::string body = spec;
    bool sign = false;
    if (auto colon = body.find(':'); colon != std::string::npos) {
        std::string suffix = body.substr(colon + 1);
        if (suffix != "sign") throw SchemaError("unknown target suffix ':" + suffix + "'");
        sign = true;
        body = body.substr(0, colon);
    }
    GradedModule m;
    std::optional<std::pair<BasisRef, BasisRef>> cone;  // ℓ1(second) = first
    if (body == "cone12") {
        m.add(1, "x1");
        m.add(2, "x2");
        cone = {{BasisRef{1, 0}, BasisRef{2, 0}}};
    } else {
        int count = 0;
        std::string piece;
        std::istringstream in(body);
        while (std::getline(in, piece, ',')) {
            if (piece.empty() || piece[0] != 'Q')
                throw SchemaError("target spec wants Q<degree> entries, e.g. Q1 or Q1,Q2");
            int degree;
            try {
                degree = std::stoi(piece.substr(1));
            } catch (const std::exception&) {
                throw SchemaError("bad target degree in '" + piece + "'");
            }
            if (degree < 1) throw SchemaError("target degrees must be positive");
            m.add(degree, "x" + std::to_string(++count));
        }
        if (m.empty()) throw SchemaError("empty target spec");
    }
    SLAlgebra l(m, Convention::Shifted, 2, m.max_degree());
    if (cone) {
        QVec v(1);
        v[0] = 1;
        l.add_bracket({cone->second}, v);
    }
    RetractionTarget out{std::move(l), std::nullopt};
    if (sign) {
        auto chi = g.sign_character();
        if (!chi) throw SchemaError("the chosen group has no sign character for a sign target");
        std::vector<LinearMap> mats;
        for (int e = 0; e < g.order(); ++e)
            mats.push_back(LinearMap::identity(out.algebra.carrier()) * Rat((*chi)[e]));
        out.action = GroupRep(g, out.algebra.carrier(), std::move(mats));
    }
    return out;
}

CommandResult cmd_verify_retraction(const std::string& group, int dim_cap, const std::string& target,
                                    bool inject_fault, long max_cells) {
    FiniteGroup g = group_preset(group);
    RetractionTarget t = parse_retraction_target(target, g);
    RetractionOptions opt;
    opt.m_max = dim_cap;
    opt.map_simplex_dim = 2;
    opt.samples = g.order() >= 6 ? 2 : 3;
    opt.inject_h_fault = inject_fault;
    opt.max_cells = max_cells;
    auto lines = verify_retraction(g, t.algebra, t.action ? &*t.action : nullptr, opt);
    std::ostringstream out;
    bool all = true;
    for (const auto& ln : lines) {
        out << ln.name << ": " << (ln.ok ? "ok" : "FAIL") << " (" << ln.checks << " checks)";
        if (!ln.ok && !ln.witness.empty()) out << " — " << ln.witness;
        out << "\n";
        all = all && ln.ok;
    }
    out << (all ? "overall: pass" : "overall: FAIL") << "\n";
    return {all ? 0 : 2, out.str()};
}

// ------------------------------------------------------------------ examples

namespace {

std::string pi_summary(const PiReport& rep) {
    if (rep.trivial()) return "point";
    std::string out;
    for (const auto& e : rep.entries) {
        if (e.dim == 0) continue;
        if (!out.empty()) out += ", ";
        out += "Q^" + std::to_string(e.dim) + " in degree " + std::to_string(e.degree);
    }
    return out;
}

}  // namespace

std::string example_output(const std::string& name, long max_cells) {
    std::ostringstream out;
    if (name == "wedge-s2") {
        ProblemDocument doc = wedge_document();
        out << "# wedge-s2\n\n";
        out << cmd_invariants(doc, 3, Format::Markdown, max_cells).output;
        out << "\n";
        out << cmd_pi(doc, 4, Format::Markdown, max_cells).output;
        return out.str();
    }
    if (name == "map-s2-s3wedge") {
        ProblemDocument doc = map_s2_wedge_document();
        out << "# map-s2-s3wedge\n\n";
        out << cmd_invariants(doc, 7, Format::Markdown, max_cells).output;
        out << "\n";
        out << cmd_pi(doc, 7, Format::Markdown, max_cells).output;
        return out.str();
    }
    if (name == "cp-n") {
        out << "# cp-n\n\n";
        out << "| n | a | compatible (b = a^(n+1)) | b = a accepted | homotopy fixed points |\n";
        out << "|---|---|---|---|---|\n";
        for (int n = 1; n <= 3; ++n)
            for (long a : {-2L, -1L, 1L, 2L}) {
                ProblemDocument good = cp_document(n, Rat(a));
                BuiltProblem p = build_problem(good, max_cells);
                bool eq_good = check_equivariance(p.algebra).ok;
                // the same scalar on both generators
                ProblemDocument bad = good;
                bad.action.clear();
                bad.action.push_back({"r",
                                      {{"x", Combo{{{Rat(a), "x"}}}}, {"y", Combo{{{Rat(a), "y"}}}}}});
                BuiltProblem pb = build_problem(bad, max_cells);
                bool eq_bad = check_equivariance(pb.algebra).ok;
                PiReport rep = homotopy_fixed_pi(p.algebra, 2 * n + 2);
                out << "| " << n << " | " << a << " | " << (eq_good ? "yes" : "no") << " | "
                    << (eq_bad ? "yes" : "no") << " | " << pi_summary(rep) << " |\n";
            }
        return out.str();
    }
    if (name == "sphere-antipodal") {
        out << "# sphere-antipodal\n\n";
        out << "| n | model | homotopy fixed points |\n|---|---|---|\n";
        for (int n = 1; n <= 6; ++n) {
            ProblemDocument doc = sphere_document(n);
            BuiltProblem p = build_problem(doc, max_cells);
            PiReport rep = homotopy_fixed_pi(p.algebra, 2 * n);
            out << "| " << n << " | " << (n % 2 ? "odd, fixed generator" : "even, sign on the generator")
                << " | " << pi_summary(rep) << " |\n";
        }
        return out.str();
    }
    if (name == "em-product") {
        ProblemDocument doc = em_document(3, 2);
        out << "# em-product\n\n";
        out << cmd_invariants(doc, 2, Format::Markdown, max_cells).output;
        out << "\n";
        out << cmd_pi(doc, 3, Format::Markdown, max_cells).output;
        out << "note: the homotopy fixed points form an Eilenberg-MacLane space on the invariant line,\n";
        out << "note: in the degree of the generators (here 2), independent of the generator count.\n";
        return out.str();
    }
    throw SchemaError("unknown example '" + name + "'");
}

namespace {
const std::map<std::string, std::string>& fixtures();
}

const std::string& fixture_text(const std::string& name) {
    auto it = fixtures().find(name);
    if (it == fixtures().end()) throw SchemaError("no fixture for example '" + name + "'");
    return it->second;
}

CommandResult cmd_example(const std::string& name, long max_cells) {
    std::string got = example_output(name, max_cells);
    const std::string& want = fixture_text(name);
    if (got == want) return {0, got + "\nfixture: match\n"};
    std::ostringstream out;
    out << got << "\nfixture: MISMATCH\n";
    std::istringstream a(want), b(got);
    std::string la, lb;
    int line = 0;
    while (true) {
        bool ha = bool(std::getline(a, la));
        bool hb = bool(std::getline(b, lb));
        ++line;
        if (!ha && !hb) break;
        if (!ha || !hb || la != lb) {
            out << "first difference at line " << line << "\n";
            out << "  expected: " << (ha ? la : "<eof>") << "\n";
            out << "  actual:   " << (hb ? lb : "<eof>") << "\n";
            break;
        }
    }
    return {2, out.str()};
}

namespace {

const std::map<std::string, std::string>& fixtures() {
    static const std::map<std::string, std::string> kFixtures = {
        {"wedge-s2", "PLACEHOLDER"},
        {"map-s2-s3wedge", "PLACEHOLDER"},
        {"cp-n", "PLACEHOLDER"},
        {"sphere-antipodal", "PLACEHOLDER"},
        {"em-product", "PLACEHOLDER"},
    };
    return kFixtures;
}

}  // namespace

}  // namespace mcfix

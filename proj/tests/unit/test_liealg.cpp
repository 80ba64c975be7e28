#include <doctest.h>

#include "mcfix/equivariant.hpp"
#include "mcfix/free_lie.hpp"
#include "support/lie_oracle.hpp"

using namespace mcfix;

namespace {

// Direct expansion of the classical graded Jacobi identity on a dg Lie table:
// [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]] over all ordered triples.
// Independent of the suspension route used by check_jacobi.
bool dglie_jacobi_by_expansion(const SLAlgebra& l) {
    REQUIRE(l.convention() == Convention::DgLie);
    std::vector<BasisRef> all;
    for (int n : l.carrier().degrees())
        for (int i = 0; i < l.carrier().dim(n); ++i) all.push_back({n, i});
    for (const auto& x : all)
        for (const auto& y : all)
            for (const auto& z : all) {
                GradedVec yz = l.eval_basis({y, z});
                GradedVec lhs = l.eval({basis_vector(l.carrier(), x.degree, x.index), yz});
                GradedVec xy = l.eval_basis({x, y});
                GradedVec t1 = l.eval({xy, basis_vector(l.carrier(), z.degree, z.index)});
                GradedVec xz = l.eval_basis({x, z});
                GradedVec t2 = l.eval({basis_vector(l.carrier(), y.degree, y.index), xz});
                Rat s = ((x.degree * y.degree) & 1) ? -1 : 1;
                QVec residual = lhs.coords;
                for (size_t i = 0; i < residual.size(); ++i) residual[i] -= t1.coords[i] + s * t2.coords[i];
                if (!is_zero(residual)) return false;
            }
    return true;
}

SLAlgebra cp_model(int n, bool correct_scale = true) {
    GradedModule m;
    m.add(2, "x");
    m.add(2 * n + 1, "y");
    SLAlgebra l(m, Convention::Shifted, n + 1, 2 * n + 1);
    l.set_weight({2 * n + 1, 0}, n + 1);
    Tuple t(n + 1, BasisRef{2, 0});
    QVec y(1);
    y[0] = correct_scale ? inv_factorial(n + 1) : 1;
    l.add_bracket(t, std::move(y));
    return l;
}

GroupRep scalar_action_z2(const GradedModule& m, const std::map<int, Rat>& scale_by_degree) {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    LinearMap sigma(0);
    for (int n : m.degrees()) {
        QMatrix b = QMatrix::identity(m.dim(n));
        b = b * scale_by_degree.at(n);
        sigma.set_block(n, std::move(b));
    }
    return GroupRep(z2, m, {LinearMap::identity(m), sigma});
}

}  // namespace

TEST_CASE("free Lie algebra dimensions") {
    SUBCASE("two odd generators (wedge of 2-spheres model)") {
        SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
        CHECK(l.carrier().dim(1) == 2);
        CHECK(l.carrier().dim(2) == 3);
        CHECK(l.carrier().dim(3) == 2);
    }
    SUBCASE("two even generators to weight four") {
        SLAlgebra l = free_lie({{{"a", 2}, {"b", 2}}, 4, Convention::DgLie});
        CHECK(l.carrier().dim(2) == 2);
        CHECK(l.carrier().dim(4) == 1);
        CHECK(l.carrier().dim(6) == 2);
        CHECK(l.carrier().dim(8) == 3);
        // the classical ranks, cross-checked in the tensor algebra
        testoracle::LieOracle oracle({{"a", 2}, {"b", 2}});
        std::vector<testoracle::TensorElement> w4;
        for (const char* e : {"[a,[a,[a,b]]]", "[b,[a,[a,b]]]", "[b,[b,[a,b]]]", "[a,[b,[a,b]]]"})
            w4.push_back(oracle.expand(e));
        CHECK(testoracle::span_rank(w4) == 3);
    }
    SUBCASE("one even generator has no weight-2 part") {
        SLAlgebra l = free_lie({{{"x", 2}}, 2, Convention::DgLie});
        CHECK(l.carrier().dim(4) == 0);
    }
    SUBCASE("one odd generator keeps its self-bracket") {
        SLAlgebra l = free_lie({{{"x", 1}}, 3, Convention::DgLie});
        CHECK(l.carrier().dim(2) == 1);  // [x,x]
        CHECK(l.carrier().dim(3) == 0);  // [x,[x,x]] = 0
    }
    SUBCASE("bracket labels follow the construction order") {
        SLAlgebra l = free_lie({{{"a", 2}, {"b", 2}}, 4, Convention::DgLie});
        CHECK(l.carrier().labels(4) == std::vector<std::string>{"[a,b]"});
        CHECK(l.carrier().labels(6) == std::vector<std::string>{"[a,[a,b]]", "[b,[a,b]]"});
        CHECK(l.carrier().labels(8) ==
              std::vector<std::string>{"[a,[a,[a,b]]]", "[b,[a,[a,b]]]", "[b,[b,[a,b]]]"});
    }
}

TEST_CASE("free Lie tables agree with the tensor-algebra oracle") {
    testoracle::LieOracle oracle({{"u1", 1}, {"u2", 1}});
    SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
    // every table entry, re-expanded through labels, must match the oracle
    for (const auto& [tuple, value] : l.table()) {
        if (tuple.size() != 2) continue;
        std::string lhs = "[" + l.carrier().label(tuple[0].degree, tuple[0].index) + "," +
                          l.carrier().label(tuple[1].degree, tuple[1].index) + "]";
        int out = l.bracket_output_degree(tuple);
        std::string rhs;
        for (int i = 0; i < int(value.size()); ++i) {
            if (value[i] == 0) continue;
            if (!rhs.empty()) rhs += "+";
            rhs += rat_str(value[i]) + " " + l.carrier().label(out, i);
        }
        if (rhs.empty()) rhs = "0 u1";  // zero element written in the expression grammar
        auto a = oracle.expand(lhs);
        auto b = oracle.expand(rhs);
        b.add(a, -1);
        CHECK_MESSAGE(b.zero(), "table mismatch on ", lhs);
    }
}

TEST_CASE("jacobi checker") {
    SUBCASE("free graded Lie algebras pass") {
        for (auto spec : std::vector<FreeLieSpec>{{{{"u1", 1}, {"u2", 1}}, 4, Convention::DgLie},
                                                  {{{"a", 2}, {"b", 2}}, 4, Convention::DgLie},
                                                  {{{"x", 1}, {"y", 2}}, 4, Convention::DgLie},
                                                  {{{"p", 1}, {"q", 1}, {"r", 2}}, 3, Convention::DgLie}}) {
            SLAlgebra l = free_lie(spec);
            auto rep = l.check_jacobi(3);
            CHECK_MESSAGE(rep.ok, rep.witness);
            CHECK(dglie_jacobi_by_expansion(l));
        }
    }
    SUBCASE("complex projective space models pass") {
        for (int n : {1, 2, 3}) {
            auto rep = cp_model(n).check_jacobi(n + 2);
            CHECK_MESSAGE(rep.ok, rep.witness);
        }
    }
    SUBCASE("a corrupted entry fails at n = 3 and is caught by the direct expansion too") {
        SLAlgebra l = free_lie({{{"a", 1}, {"b", 1}}, 3, Convention::DgLie});
        // bump ℓ2([a,a] type entry): add +1 to the first coordinate of ℓ2(a,b)
        GradedVec cur = l.eval_basis({BasisRef{1, 0}, BasisRef{1, 1}});
        QVec bumped = cur.coords;
        bumped[0] += 1;
        l.add_bracket({BasisRef{1, 0}, BasisRef{1, 1}}, bumped);
        // adding over an existing entry records a symmetry violation instead;
        // rebuild the table from scratch for a clean fault
        SLAlgebra fresh(l.carrier(), Convention::DgLie, 2, l.degree_cap());
        for (const auto& [t, v] : l.table()) {
            QVec val = v;
            if (t == Tuple{BasisRef{1, 0}, BasisRef{1, 1}}) val[0] += 1;
            fresh.add_bracket(t, val);
        }
        for (int n : fresh.carrier().degrees())
            for (int i = 0; i < fresh.carrier().dim(n); ++i) fresh.set_weight({n, i}, l.weight({n, i}));
        auto rep = fresh.check_jacobi(3);
        CHECK_FALSE(rep.ok);
        CHECK(rep.arity == 3);
        CHECK_FALSE(dglie_jacobi_by_expansion(fresh));
    }
}

TEST_CASE("symmetry checker") {
    SUBCASE("constructed tables pass") {
        SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
        CHECK(l.check_symmetry().ok);
    }
    SUBCASE("abelian tables pass") {
        GradedModule m;
        m.add(1, "x");
        SLAlgebra l(m, Convention::Shifted, 2, 1);
        CHECK(l.check_symmetry().ok);
    }
    SUBCASE("a flipped sign is reported with its tuple") {
        GradedModule m;
        m.add(1, "x");
        m.add(2, "y");
        m.add(3, "z");
        SLAlgebra l(m, Convention::DgLie, 2, 3);
        QVec z(1);
        z[0] = 1;
        l.add_bracket({BasisRef{1, 0}, BasisRef{2, 0}}, z);
        // [y,x] = -(-1)^{|x||y|}[x,y] = -[x,y]; storing +[x,y] breaks the law
        QVec wrong(1);
        wrong[0] = 1;
        l.add_bracket({BasisRef{2, 0}, BasisRef{1, 0}}, wrong);
        auto rep = l.check_symmetry();
        CHECK_FALSE(rep.ok);
        CHECK(rep.witness.find("(x, y)") != std::string::npos);
    }
    SUBCASE("an odd self-bracket in the shifted convention must vanish") {
        GradedModule m;
        m.add(1, "x");
        m.add(1, "w");
        SLAlgebra l(m, Convention::Shifted, 2, 1);
        QVec v(2);
        v[0] = 1;
        l.add_bracket({BasisRef{1, 1}, BasisRef{1, 1}}, v);
        CHECK_FALSE(l.check_symmetry().ok);
    }
}

TEST_CASE("suspension") {
    SUBCASE("abelian algebra just shifts degree") {
        GradedModule m;
        m.add(3, "x");
        SLAlgebra l(m, Convention::DgLie, 2, 3);
        SLAlgebra s = l.suspend();
        CHECK(s.carrier().dim(4) == 1);
        CHECK(s.convention() == Convention::Shifted);
    }
    SUBCASE("suspended free Lie on two even generators hits the stated degrees") {
        FreeLieAlgebra fl = free_lie_with_data({{{"a", 2}, {"b", 2}}, 3, Convention::DgLie});
        SLAlgebra s = fl.algebra.suspend();
        CHECK(s.carrier().dim(3) == 2);   // a, b
        CHECK(s.carrier().dim(5) == 1);   // [a,b]
        CHECK(s.carrier().dim(7) == 2);   // [a,[a,b]], [b,[a,b]]
        CHECK(s.check_jacobi(3).ok);
        CHECK(s.check_symmetry().ok);
    }
    SUBCASE("round trip is the identity on tables") {
        for (auto spec : std::vector<FreeLieSpec>{{{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie},
                                                  {{{"a", 2}, {"b", 2}}, 4, Convention::DgLie},
                                                  {{{"x", 1}, {"y", 2}}, 3, Convention::DgLie}}) {
            SLAlgebra l = free_lie(spec);
            SLAlgebra back = l.suspend().desuspend();
            CHECK(back.carrier() == l.carrier());
            CHECK(back.table() == l.table());
        }
    }
    SUBCASE("shifted free Lie goes through the desuspended construction") {
        SLAlgebra s = free_lie({{{"u1", 2}, {"u2", 2}}, 3, Convention::Shifted});
        CHECK(s.convention() == Convention::Shifted);
        CHECK(s.carrier().dim(2) == 2);
        CHECK(s.carrier().dim(3) == 3);
        CHECK(s.carrier().dim(4) == 2);
        CHECK(s.check_jacobi(3).ok);
    }
}

TEST_CASE("lower central series") {
    SUBCASE("abelian algebras have F^2 = 0") {
        GradedModule m;
        m.add(1, "x");
        m.add(2, "y");
        SLAlgebra l(m, Convention::Shifted, 2, 2);
        CHECK(l.lcs_filtration(2).empty());
    }
    SUBCASE("free Lie filtration dimensions") {
        SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
        auto f2 = l.lcs_filtration(2);
        int dim_f2 = 0;
        for (const auto& [n, vs] : f2) dim_f2 += int(vs.size());
        CHECK(dim_f2 == 5);
        auto f3 = l.lcs_filtration(3);
        int dim_f3 = 0;
        for (const auto& [n, vs] : f3) dim_f3 += int(vs.size());
        CHECK(dim_f3 == 2);
        CHECK(l.check_filtration().ok);
    }
    SUBCASE("descending chain") {
        SLAlgebra l = free_lie({{{"a", 2}, {"b", 2}}, 4, Convention::DgLie});
        for (int p = 1; p < 4; ++p) {
            auto fp = l.lcs_filtration(p);
            auto fq = l.lcs_filtration(p + 1);
            for (const auto& [n, vs] : fq) {
                SpanBuilder big(l.carrier().dim(n));
                for (const auto& v : fp[n]) big.insert(v);
                for (const auto& v : vs) CHECK(big.contains(v));
            }
        }
    }
}

TEST_CASE("nilpotent quotients") {
    SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
    SUBCASE("p = 2 kills every bracket") {
        SLAlgebra q = l.nilpotent_quotient(2);
        CHECK(q.is_abelian());
        CHECK(q.carrier().dim(1) == 2);
        CHECK(q.carrier().total_dim() == 2);
    }
    SUBCASE("p = 3 keeps weights 1 and 2 and passes jacobi") {
        SLAlgebra q = l.nilpotent_quotient(3);
        CHECK(q.carrier().dim(1) == 2);
        CHECK(q.carrier().dim(2) == 3);
        CHECK(q.carrier().dim(3) == 0);
        CHECK(q.check_jacobi(3).ok);
        // [u1,[u1,u2]] dies in the quotient
        GradedVec v = q.eval_basis({BasisRef{1, 0}, BasisRef{2, 0}});
        CHECK(is_zero(v.coords));
    }
    SUBCASE("p beyond the maximal weight is the identity") {
        SLAlgebra q = l.nilpotent_quotient(7);
        CHECK(q.carrier() == l.carrier());
        CHECK(q.table() == l.table());
    }
}

TEST_CASE("equivariance checker on projective-space models") {
    for (int n : {1, 2, 3}) {
        SLAlgebra l = cp_model(n);
        for (long a : {-2L, -1L, 2L, 3L}) {
            Rat ra(a);
            Rat good = 1;
            for (int k = 0; k <= n; ++k) good *= ra;
            GSLAlgebra gl{l, scalar_action_z2(l.carrier(), {{2, ra}, {2 * n + 1, good}})};
            CHECK(check_equivariance(gl).ok);
            GSLAlgebra bad{l, scalar_action_z2(l.carrier(), {{2, ra}, {2 * n + 1, ra}})};
            if (good != ra) CHECK_FALSE(check_equivariance(bad).ok);
        }
    }
    SUBCASE("trivial actions always pass") {
        SLAlgebra l = cp_model(2);
        GSLAlgebra gl{l, GroupRep::trivial(FiniteGroup::cyclic(2), l.carrier())};
        CHECK(check_equivariance(gl).ok);
    }
}

TEST_CASE("fixed subalgebras") {
    SUBCASE("wedge model: swap action") {
        FreeLieAlgebra fl = free_lie_with_data({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
        std::map<int, std::vector<GradedVec>> images;
        images[1] = {basis_vector(fl.algebra.carrier(), 1, 1), basis_vector(fl.algebra.carrier(), 1, 0)};
        GroupRep rep = induced_action(fl, FiniteGroup::cyclic(2), images);
        CHECK(rep.homomorphism_ok());
        GSLAlgebra gl{fl.algebra, rep};
        REQUIRE(check_equivariance(gl).ok);
        SLAlgebra fixed = fixed_subalgebra(gl);
        CHECK(fixed.carrier().dim(1) == 1);
        CHECK(fixed.carrier().dim(2) == 2);
        CHECK(fixed.carrier().dim(3) == 1);
        CHECK(fixed.carrier().labels(1) == std::vector<std::string>{"u1 + u2"});
        // both code paths agree degree-wise
        for (int n : fl.algebra.carrier().degrees())
            CHECK(fixed.carrier().dim(n) == int(rep.invariants(n).size()));
        // the fixed subalgebra of a Jacobi algebra still satisfies Jacobi
        CHECK(fixed.check_jacobi(3).ok);
        CHECK(fixed.check_filtration().ok);
    }
    SUBCASE("even sphere model: sign action fixes only the self-bracket") {
        GradedModule m;
        m.add(4, "x");
        m.add(7, "[x,x]");
        SLAlgebra l(m, Convention::Shifted, 2, 7);
        l.set_weight({7, 0}, 2);
        QVec v(1);
        v[0] = 1;
        l.add_bracket({BasisRef{4, 0}, BasisRef{4, 0}}, v);
        GSLAlgebra gl{l, scalar_action_z2(m, {{4, -1}, {7, 1}})};
        REQUIRE(check_equivariance(gl).ok);
        SLAlgebra fixed = fixed_subalgebra(gl);
        CHECK(fixed.carrier().dim(4) == 0);
        CHECK(fixed.carrier().dim(7) == 1);
        CHECK(fixed.is_abelian());
    }
    SUBCASE("trivial action keeps everything") {
        SLAlgebra l = free_lie({{{"a", 2}, {"b", 2}}, 3, Convention::DgLie});
        GSLAlgebra gl{l, GroupRep::trivial(FiniteGroup::cyclic(3), l.carrier())};
        SLAlgebra fixed = fixed_subalgebra(gl);
        for (int n : l.carrier().degrees()) CHECK(fixed.carrier().dim(n) == l.carrier().dim(n));
    }
}

TEST_CASE("reynolds commutes with brackets on invariants") {
    FreeLieAlgebra fl = free_lie_with_data({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
    std::map<int, std::vector<GradedVec>> images;
    images[1] = {basis_vector(fl.algebra.carrier(), 1, 1), basis_vector(fl.algebra.carrier(), 1, 0)};
    GroupRep rep = induced_action(fl, FiniteGroup::cyclic(2), images);
    // brackets of invariant vectors are fixed by every group element
    auto inv1 = rep.invariants(1);
    for (const auto& a : inv1)
        for (const auto& b : inv1) {
            GradedVec br = fl.algebra.eval({GradedVec{1, a}, GradedVec{1, b}});
            for (int g = 0; g < 2; ++g)
                CHECK(rep.matrix(g).block(2)->apply(br.coords) == br.coords);
        }
}

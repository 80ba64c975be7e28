#include <doctest.h>

#include "mcfix/cdga.hpp"
#include "mcfix/free_lie.hpp"
#include "mcfix/mc.hpp"

using namespace mcfix;

namespace {

// H*(S^k; Q) = Q·1 ⊕ Q·x with x² = 0 and zero differential
CdgaModel sphere_cohomology(int k) {
    GradedModule m;
    m.add(0, "1");
    m.add(k, "x");
    CdgaModel a(m);
    a.set_product({k, 0}, {k, 0}, QVec(m.dim(2 * k)));
    return a;
}

CdgaModel sphere_with_sign_action(int k) {
    CdgaModel a = sphere_cohomology(k);
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    LinearMap sigma = LinearMap::identity(a.carrier());
    QMatrix neg(1, 1);
    neg.at(0, 0) = -1;
    sigma.set_block(k, std::move(neg));
    a.set_action(GroupRep(z2, a.carrier(), {LinearMap::identity(a.carrier()), sigma}));
    return a;
}

CdgaModel unit_cdga() {
    GradedModule m;
    m.add(0, "1");
    return CdgaModel(m);
}

GSLAlgebra wedge_s3s3_model() {
    FreeLieAlgebra fl = free_lie_with_data({{{"a", 2}, {"b", 2}}, 4, Convention::DgLie});
    std::map<int, std::vector<GradedVec>> images;
    images[1] = {basis_vector(fl.algebra.carrier(), 2, 1), basis_vector(fl.algebra.carrier(), 2, 0)};
    GroupRep rep = induced_action(fl, FiniteGroup::cyclic(2), images);
    return {fl.algebra, rep};
}

}  // namespace

TEST_CASE("cdga axioms") {
    SUBCASE("sphere cohomology passes") {
        CHECK(check_cdga(sphere_cohomology(2)).ok);
    }
    SUBCASE("sign action on the top class is a valid G-CDGA") {
        CHECK(check_cdga(sphere_with_sign_action(2)).ok);
    }
    SUBCASE("dropping the commutativity sign in odd degrees fails") {
        GradedModule m;
        m.add(0, "1");
        m.add(1, "s");
        m.add(1, "t");
        m.add(2, "u");
        CdgaModel a(m);
        QVec st(1);
        st[0] = 1;
        a.set_product({1, 0}, {1, 1}, st);
        a.set_product({1, 1}, {1, 0}, st);  // should be -st for odd·odd
        a.set_product({1, 0}, {1, 0}, QVec(1));
        a.set_product({1, 1}, {1, 1}, QVec(1));
        auto rep = check_cdga(a);
        CHECK_FALSE(rep.ok);
        CHECK(rep.axiom == "graded commutativity");
    }
    SUBCASE("an odd square must vanish") {
        GradedModule m;
        m.add(0, "1");
        m.add(1, "s");
        m.add(2, "u");
        CdgaModel a(m);
        QVec ss(1);
        ss[0] = 1;
        a.set_product({1, 0}, {1, 0}, ss);  // s² = u contradicts graded commutativity
        auto rep = check_cdga(a);
        CHECK_FALSE(rep.ok);
    }
}

TEST_CASE("connectivity guard") {
    SLAlgebra l3 = free_lie({{{"a", 3}, {"b", 3}}, 2, Convention::Shifted});
    CHECK(connectivity_guard(sphere_cohomology(2), l3));
    SLAlgebra l1 = free_lie({{{"u", 1}}, 2, Convention::Shifted});
    CHECK_FALSE(connectivity_guard(sphere_cohomology(2), l1));
    CHECK(connectivity_guard(unit_cdga(), l1));
}

TEST_CASE("tensor with the unit CDGA is the algebra itself") {
    SLAlgebra l = free_lie({{{"u1", 2}, {"u2", 2}}, 3, Convention::Shifted});
    TensorModel t = tensor_model(unit_cdga(), l, 6);
    CHECK_FALSE(t.dropped_nonpositive);
    for (int n : l.carrier().degrees()) CHECK(t.algebra.carrier().dim(n) == l.carrier().dim(n));
    CHECK(t.algebra.table().size() == l.table().size());
    for (const auto& [tup, val] : l.table()) {
        auto it = t.algebra.table().find(tup);
        REQUIRE(it != t.algebra.table().end());
        CHECK(it->second == val);
    }
}

TEST_CASE("mapping-space tensor of the wedge example") {
    GSLAlgebra gl = wedge_s3s3_model();
    SLAlgebra suspended = gl.algebra.suspend();
    CdgaModel a = sphere_with_sign_action(2);
    REQUIRE(check_cdga(a).ok);
    REQUIRE(connectivity_guard(a, suspended));
    GroupRep lifted = suspend_action(gl.action);
    TensorModel t = tensor_model(a, suspended, 7, &lifted);

    SUBCASE("total dimensions in degrees 1..7 are 2,0,3,0,3,0,5") {
        std::vector<int> want{2, 0, 3, 0, 3, 0, 5};
        for (int n = 1; n <= 7; ++n) CHECK(t.algebra.carrier().dim(n) == want[n - 1]);
    }
    SUBCASE("tensor labels follow the A-major ordering") {
        CHECK(t.algebra.carrier().labels(1) == std::vector<std::string>{"x⊗a", "x⊗b"});
        CHECK(t.algebra.carrier().labels(3) == std::vector<std::string>{"1⊗a", "1⊗b", "x⊗[a,b]"});
    }
    SUBCASE("the diagonal action sends x⊗a to -x⊗b") {
        REQUIRE(t.action.has_value());
        const QMatrix* b = t.action->matrix(1).block(1);
        REQUIRE(b);
        CHECK(b->at(1, 0) == -1);  // coefficient of x⊗b in σ(x⊗a)
        CHECK(b->at(0, 0) == 0);
        GSLAlgebra gt{t.algebra, *t.action};
        CHECK(check_equivariance(gt).ok);
    }
    SUBCASE("tensor structure passes symmetry and jacobi") {
        CHECK(t.algebra.check_symmetry().ok);
        auto rep = t.algebra.check_jacobi(3);
        CHECK_MESSAGE(rep.ok, rep.witness);
    }
}

TEST_CASE("tensor jacobi property on mixed small pairs") {
    std::vector<CdgaModel> algebras;
    algebras.push_back(sphere_cohomology(2));
    algebras.push_back(sphere_cohomology(3));
    algebras.push_back(unit_cdga());
    {
        // truncated polynomial algebra Q[x]/(x^3), |x| = 2
        GradedModule m;
        m.add(0, "1");
        m.add(2, "x");
        m.add(4, "x2");
        CdgaModel a(m);
        QVec x2(1);
        x2[0] = 1;
        a.set_product({2, 0}, {2, 0}, x2);
        REQUIRE(check_cdga(a).ok);
        algebras.push_back(a);
    }
    {
        // acyclic piece: ds = u, truncated above degree 2
        GradedModule m;
        m.add(0, "1");
        m.add(1, "s");
        m.add(2, "u");
        CdgaModel a(m);
        QVec u(1);
        u[0] = 1;
        a.set_differential_entry({1, 0}, u);
        a.set_product({1, 0}, {1, 0}, QVec(1));
        REQUIRE(check_cdga(a).ok);
        algebras.push_back(a);
    }

    std::vector<SLAlgebra> lies;
    lies.push_back(free_lie({{{"p", 5}, {"q", 5}}, 3, Convention::Shifted}));
    lies.push_back(free_lie({{{"p", 4}, {"q", 6}}, 3, Convention::Shifted}));
    {
        GradedModule m;
        m.add(4, "x");
        m.add(7, "y");
        SLAlgebra cp1(m, Convention::Shifted, 2, 12);
        QVec y(1);
        y[0] = rat(1, 2);
        cp1.add_bracket({BasisRef{4, 0}, BasisRef{4, 0}}, y);
        lies.push_back(cp1);
    }

    int pairs = 0;
    for (const auto& a : algebras)
        for (const auto& l : lies) {
            if (!connectivity_guard(a, l)) continue;
            TensorModel t = tensor_model(a, l, 14);
            CHECK(t.algebra.check_symmetry().ok);
            auto rep = t.algebra.check_jacobi(3);
            CHECK_MESSAGE(rep.ok, rep.witness);
            ++pairs;
        }
    CHECK(pairs >= 10);
}

TEST_CASE("chevalley-eilenberg cochains") {
    SUBCASE("abelian one-generator algebra gives an exterior generator with zero differential") {
        GradedModule m;
        m.add(3, "x");
        SLAlgebra l(m, Convention::Shifted, 2, 3);
        CdgaModel c = ce_cochains(l, 2, 9);
        CHECK(c.carrier().dim(3) == 1);
        CHECK(c.carrier().dim(6) == 0);  // odd square dies
        CHECK(check_cdga(c).ok);
        const QMatrix* d = c.differential().block(3);
        CHECK((d == nullptr || d->is_zero()));
    }
    SUBCASE("CP^1 model dualizes to dy ∝ x·x with dx = 0") {
        GradedModule m;
        m.add(2, "x");
        m.add(3, "y");
        SLAlgebra l(m, Convention::Shifted, 2, 3);
        QVec y(1);
        y[0] = rat(1, 2);
        l.add_bracket({BasisRef{2, 0}, BasisRef{2, 0}}, y);
        CdgaModel c = ce_cochains(l, 3, 9);
        REQUIRE(check_cdga(c).ok);
        int ix = c.carrier().index_of(2, "x^");
        REQUIRE(ix >= 0);
        const QMatrix* d2 = c.differential().block(2);
        if (d2)
            for (int r = 0; r < d2->rows(); ++r) CHECK(d2->at(r, ix) == 0);
        int iy = c.carrier().index_of(3, "y^");
        int ixx = c.carrier().index_of(4, "x^·x^");
        REQUIRE(iy >= 0);
        REQUIRE(ixx >= 0);
        const QMatrix* d3 = c.differential().block(3);
        REQUIRE(d3);
        CHECK(d3->at(ixx, iy) != 0);
        for (int r = 0; r < d3->rows(); ++r)
            if (r != ixx) CHECK(d3->at(r, iy) == 0);
    }
    SUBCASE("dualized sign action is the sign action on the dual generator") {
        GradedModule m;
        m.add(3, "x");
        SLAlgebra l(m, Convention::Shifted, 2, 3);
        FiniteGroup z2 = FiniteGroup::cyclic(2);
        GroupRep rep(z2, m, {LinearMap::identity(m), LinearMap::identity(m) * Rat(-1)});
        CdgaModel c = ce_cochains(l, 2, 9, &rep);
        REQUIRE(c.action().has_value());
        CHECK(c.action()->matrix(1).block(3)->at(0, 0) == -1);
        CHECK(check_cdga(c).ok);
    }
    SUBCASE("d² = 0 iff the source satisfies jacobi") {
        SLAlgebra good = free_lie({{{"u1", 2}, {"u2", 2}}, 3, Convention::Shifted});
        REQUIRE(good.check_jacobi(3).ok);
        CdgaModel cg = ce_cochains(good, 3, 12);
        CHECK(check_cdga(cg).ok);  // includes d² = 0

        SLAlgebra bad(good.carrier(), Convention::Shifted, good.arity_cap(), good.degree_cap());
        for (int n : good.carrier().degrees())
            for (int i = 0; i < good.carrier().dim(n); ++i) bad.set_weight({n, i}, good.weight({n, i}));
        bool bumped = false;
        for (const auto& [t, v] : good.table()) {
            QVec val = v;
            if (!bumped && t.size() == 2 && t[0].degree == 2 && t[1].degree == 2) {
                val[0] += 1;
                bumped = true;
            }
            bad.add_bracket(t, val);
        }
        REQUIRE(bumped);
        REQUIRE_FALSE(bad.check_jacobi(3).ok);
        CdgaModel cb = ce_cochains(bad, 3, 12);
        auto rep = check_cdga(cb);
        CHECK_FALSE(rep.ok);
        CHECK(rep.axiom == "d^2 = 0");
    }
}

#include <doctest.h>

#include "mcfix/free_lie.hpp"
#include "mcfix/mc.hpp"

using namespace mcfix;

namespace {

SLAlgebra cp_model(int n) {
    GradedModule m;
    m.add(2, "x");
    m.add(2 * n + 1, "y");
    SLAlgebra l(m, Convention::Shifted, n + 1, 2 * n + 1);
    l.set_weight({2 * n + 1, 0}, n + 1);
    Tuple t(n + 1, BasisRef{2, 0});
    QVec y(1);
    y[0] = inv_factorial(n + 1);
    l.add_bracket(t, std::move(y));
    return l;
}

GroupRep scalar_action_z2(const GradedModule& m, const std::map<int, Rat>& scale) {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    LinearMap sigma(0);
    for (int n : m.degrees()) sigma.set_block(n, QMatrix::identity(m.dim(n)) * scale.at(n));
    return GroupRep(z2, m, {LinearMap::identity(m), sigma});
}

// abelian model of K(Q^m, n)
SLAlgebra em_model(int m_count, int degree) {
    GradedModule m;
    for (int i = 0; i < m_count; ++i) m.add(degree, "u" + std::to_string(i + 1));
    return SLAlgebra(m, Convention::Shifted, 2, degree);
}

// t in degree 0 with ℓ2(t, b) = a: twisting by t moves b onto a
SLAlgebra degree_zero_extension() {
    GradedModule m;
    m.add(0, "t");
    m.add(1, "a");
    m.add(2, "b");
    SLAlgebra l(m, Convention::Shifted, 2, 2);
    QVec a(1);
    a[0] = 1;
    l.add_bracket({BasisRef{0, 0}, BasisRef{2, 0}}, a);
    return l;
}

}  // namespace

TEST_CASE("curvature") {
    SUBCASE("zero element is Maurer-Cartan") {
        SLAlgebra l = degree_zero_extension();
        GradedVec zero{0, QVec(1)};
        CHECK(is_maurer_cartan(l, zero));
    }
    SUBCASE("abelian algebras: curvature is the differential") {
        GradedModule m;
        m.add(0, "t");
        m.add(1, "a");
        SLAlgebra l(m, Convention::Shifted, 2, 1);
        GradedVec z{0, QVec{rat(3, 2)}};
        CHECK(is_maurer_cartan(l, z));
    }
    SUBCASE("a non-cycle in an algebra with differential has nonzero curvature") {
        GradedModule m;
        m.add(-1, "w");
        m.add(0, "t");
        SLAlgebra l(m, Convention::Shifted, 2, 0);
        QVec w(1);
        w[0] = 1;
        l.add_bracket({BasisRef{0, 0}}, w);  // ℓ1(t) = w
        GradedVec z{0, QVec{Rat(1)}};
        GradedVec c = curvature(l, z);
        CHECK_FALSE(is_zero(c.coords));
        CHECK(c.coords == l.eval({z}).coords);  // only the k = 1 term survives
    }
    SUBCASE("wrong degree is refused") {
        SLAlgebra l = degree_zero_extension();
        CHECK_THROWS_AS(curvature(l, GradedVec{1, QVec(1)}), SchemaError);
    }
}

TEST_CASE("twisting") {
    SUBCASE("twist by zero keeps the table") {
        SLAlgebra l = degree_zero_extension();
        SLAlgebra t = twist(l, GradedVec{0, QVec(1)});
        CHECK(t.carrier().dim(1) == 1);
        CHECK(t.carrier().dim(2) == 1);
        GradedVec b2 = t.eval_basis({BasisRef{2, 0}});
        CHECK(is_zero(b2.coords));  // no ℓ1 between kept elements before twisting
    }
    SUBCASE("twisted differential picks up ℓ2(τ, -)") {
        SLAlgebra l = degree_zero_extension();
        GradedVec tau{0, QVec{Rat(1)}};
        REQUIRE(is_maurer_cartan(l, tau));
        SLAlgebra t = twist(l, tau);
        // by hand, the j = 1 term: ℓ1^τ(b) = ℓ1(b) + ℓ2(τ, b) = a
        GradedVec db = t.eval_basis({BasisRef{2, 0}});
        CHECK(db.coords == QVec{Rat(1)});
        GradedVec tau2{0, QVec{rat(2, 3)}};
        SLAlgebra t2 = twist(l, tau2);
        CHECK(t2.eval_basis({BasisRef{2, 0}}).coords == QVec{rat(2, 3)});
    }
    SUBCASE("abelian algebras are unchanged by any Maurer-Cartan twist") {
        GradedModule m;
        m.add(0, "t");
        m.add(1, "a");
        m.add(2, "b");
        SLAlgebra l(m, Convention::Shifted, 2, 2);
        QVec a(1);
        a[0] = 5;
        l.add_bracket({BasisRef{2, 0}}, a);  // ℓ1(b) = 5a, still abelian
        GradedVec tau{0, QVec{Rat(4)}};
        REQUIRE(is_maurer_cartan(l, tau));
        SLAlgebra t = twist(l, tau);
        CHECK(t.eval_basis({BasisRef{2, 0}}).coords == QVec{Rat(5)});
    }
    SUBCASE("non-Maurer-Cartan elements are refused") {
        GradedModule m;
        m.add(-1, "w");
        m.add(0, "t");
        SLAlgebra l(m, Convention::Shifted, 2, 0);
        QVec w(1);
        w[0] = 1;
        l.add_bracket({BasisRef{0, 0}}, w);
        CHECK_THROWS_AS(twist(l, GradedVec{0, QVec{Rat(1)}}), StructuralError);
    }
}

TEST_CASE("homotopy groups") {
    SUBCASE("one abelian generator is an Eilenberg-MacLane space") {
        for (int n : {1, 2, 5}) {
            PiReport rep = homotopy_groups(em_model(1, n), 6);
            for (int k = 1; k <= 6; ++k) CHECK(rep.dim_at(k) == (k == n ? 1 : 0));
        }
    }
    SUBCASE("dg Lie input suspends: wedge model carrier dims shift by one") {
        SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 3, Convention::DgLie});
        PiReport rep = homotopy_groups(l, 4);
        CHECK(rep.dim_at(1) == 0);
        CHECK(rep.dim_at(2) == 2);
        CHECK(rep.dim_at(3) == 3);
        CHECK(rep.dim_at(4) == 2);
    }
    SUBCASE("a product of EM spaces keeps its generator count") {
        PiReport rep = homotopy_groups(em_model(3, 2), 4);
        CHECK(rep.dim_at(2) == 3);
        CHECK(rep.dim_at(1) + rep.dim_at(3) + rep.dim_at(4) == 0);
    }
    SUBCASE("non-positive grading is refused") {
        SLAlgebra l = degree_zero_extension();
        CHECK_THROWS_AS(homotopy_groups(l, 3), HypothesisError);
    }
    SUBCASE("π₁ of a nilpotent class-2 algebra: the Heisenberg group") {
        SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 2, Convention::Shifted});
        PiReport rep = homotopy_groups(l, 1);
        REQUIRE(rep.pi1.has_value());
        CHECK(rep.pi1->dim == 3);
        CHECK(rep.pi1->nilpotency_class == 2);
        // bch table records u1 ∘ u2 = u1 + u2 + ½[u1,u2]
        CHECK(rep.pi1->bch_table[0][1] == QVec{Rat(1), Rat(1), rat(1, 2)});
    }
}

TEST_CASE("baker-campbell-hausdorff") {
    // 𝕃(u1,u2)/F^5 with every element in π₁ position
    SLAlgebra l = free_lie({{{"u1", 1}, {"u2", 1}}, 4, Convention::Shifted});
    REQUIRE(l.carrier().dim(1) == l.carrier().total_dim());
    auto vec = [&](std::initializer_list<int> coords) {
        QVec v(l.carrier().dim(1));
        int i = 0;
        for (int c : coords) v[i++] = c;
        return GradedVec{1, v};
    };
    GradedVec x = vec({1, 0});
    GradedVec y = vec({0, 1});
    GradedVec zero{1, QVec(l.carrier().dim(1))};

    SUBCASE("identity and inverse laws") {
        CHECK(bch(l, x, zero, 4).coords == x.coords);
        CHECK(bch(l, zero, y, 4).coords == y.coords);
        GradedVec minus_x{1, Rat(-1) * x.coords};
        CHECK(is_zero(bch(l, x, minus_x, 4).coords));
    }
    SUBCASE("the class-2 commutator defect is the bracket") {
        SLAlgebra l2 = l.nilpotent_quotient(3);
        GradedVec x2{1, QVec(l2.carrier().dim(1))};
        GradedVec y2 = x2;
        x2.coords[0] = 1;
        y2.coords[1] = 1;
        QVec defect = bch(l2, x2, y2, 2).coords - bch(l2, y2, x2, 2).coords;
        CHECK(defect == l2.eval({x2, y2}).coords);
    }
    SUBCASE("associativity up to class 4") {
        GradedVec z = vec({2, -1});
        GradedVec a = bch(l, bch(l, x, y, 4), z, 4);
        GradedVec b = bch(l, x, bch(l, y, z, 4), 4);
        CHECK(a.coords == b.coords);
    }
    SUBCASE("abelian inputs just add") {
        SLAlgebra ab = em_model(2, 1);
        GradedVec u{1, QVec{Rat(2), Rat(3)}};
        GradedVec v{1, QVec{Rat(-1), Rat(5)}};
        CHECK(bch(ab, u, v, 4).coords == (u.coords + v.coords));
    }
}

TEST_CASE("homotopy fixed points") {
    SUBCASE("even spheres with the antipodal action") {
        for (int n : {2, 4, 6}) {
            GradedModule m;
            m.add(n, "x");
            m.add(2 * n - 1, "[x,x]");
            SLAlgebra l(m, Convention::Shifted, 2, 2 * n - 1);
            l.set_weight({2 * n - 1, 0}, 2);
            QVec v(1);
            v[0] = 1;
            l.add_bracket({BasisRef{n, 0}, BasisRef{n, 0}}, v);
            GSLAlgebra gl{l, scalar_action_z2(m, {{n, -1}, {2 * n - 1, 1}})};
            PiReport rep = homotopy_fixed_pi(gl, 2 * n);
            for (int k = 1; k <= 2 * n; ++k) CHECK(rep.dim_at(k) == (k == 2 * n - 1 ? 1 : 0));
        }
    }
    SUBCASE("odd spheres keep their class") {
        for (int n : {1, 3, 5}) {
            SLAlgebra l = em_model(1, n);
            GSLAlgebra gl{l, GroupRep::trivial(FiniteGroup::cyclic(2), l.carrier())};
            PiReport rep = homotopy_fixed_pi(gl, n + 1);
            CHECK(rep.dim_at(n) == 1);
        }
    }
    SUBCASE("projective space classification at a = -1") {
        for (int n : {1, 2, 3}) {
            SLAlgebra l = cp_model(n);
            Rat b = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
            GSLAlgebra gl{l, scalar_action_z2(l.carrier(), {{2, -1}, {2 * n + 1, b}})};
            PiReport rep = homotopy_fixed_pi(gl, 2 * n + 2);
            if (n % 2 == 0) {
                CHECK(rep.trivial());
            } else {
                for (int k = 1; k <= 2 * n + 2; ++k) CHECK(rep.dim_at(k) == (k == 2 * n + 1 ? 1 : 0));
            }
        }
    }
    SUBCASE("scalar actions that are not involutions still classify") {
        for (int n : {1, 2}) {
            SLAlgebra l = cp_model(n);
            Rat a = 2, b = 1;
            for (int k = 0; k <= n; ++k) b *= a;
            GSLAlgebra gl{l, scalar_action_z2(l.carrier(), {{2, a}, {2 * n + 1, b}})};
            CHECK_FALSE(gl.action.homomorphism_ok());
            PiReport rep = homotopy_fixed_pi(gl, 2 * n + 2);
            CHECK(rep.trivial());
        }
    }
    SUBCASE("symmetric group permuting EM generators fixes the diagonal") {
        SLAlgebra l = em_model(3, 2);
        FiniteGroup s3 = FiniteGroup::symmetric(3);
        auto perm_map = [&](const std::vector<int>& img) {
            QMatrix b(3, 3);
            for (int j = 0; j < 3; ++j) b.at(img[j], j) = 1;
            LinearMap f(0);
            f.set_block(2, std::move(b));
            return f;
        };
        std::map<int, LinearMap> images;
        images[1] = perm_map({0, 2, 1});
        images[2] = perm_map({1, 0, 2});
        GroupRep rep = GroupRep::from_generators(s3, l.carrier(), images);
        PiReport out = homotopy_fixed_pi({l, rep}, 3);
        CHECK(out.dim_at(2) == 1);
        CHECK(out.dim_at(1) + out.dim_at(3) == 0);
    }
}

TEST_CASE("mapping space models") {
    FreeLieAlgebra fl = free_lie_with_data({{{"a", 2}, {"b", 2}}, 4, Convention::DgLie});
    std::map<int, std::vector<GradedVec>> images;
    images[1] = {basis_vector(fl.algebra.carrier(), 2, 1), basis_vector(fl.algebra.carrier(), 2, 0)};
    GroupRep rep = induced_action(fl, FiniteGroup::cyclic(2), images);
    GSLAlgebra gl{fl.algebra, rep};

    GradedModule am;
    am.add(0, "1");
    am.add(2, "x");
    CdgaModel a(am);
    a.set_product({2, 0}, {2, 0}, QVec(0));
    LinearMap sigma = LinearMap::identity(am);
    sigma.set_block(2, QMatrix::identity(1) * Rat(-1));
    a.set_action(GroupRep(FiniteGroup::cyclic(2), am, {LinearMap::identity(am), sigma}));

    SUBCASE("invariant dimensions of the wedge mapping space") {
        PiReport rep7 = mapping_space_pi(a, gl, 7);
        std::vector<int> want{1, 0, 2, 0, 1, 0, 3};
        for (int n = 1; n <= 7; ++n) CHECK(rep7.dim_at(n) == want[n - 1]);
        REQUIRE(rep7.pi1.has_value());
        CHECK(rep7.pi1->dim == 1);
        CHECK(rep7.pi1->nilpotency_class == 1);
    }
    SUBCASE("unit CDGA reduces to the homotopy fixed points") {
        GradedModule um;
        um.add(0, "1");
        CdgaModel unit(um);
        PiReport via_map = mapping_space_pi(unit, gl, 7);
        PiReport direct = homotopy_fixed_pi(gl, 7);
        for (int n = 1; n <= 7; ++n) CHECK(via_map.dim_at(n) == direct.dim_at(n));
    }
    SUBCASE("trivial group gives the full homology of the tensor") {
        GroupRep triv = GroupRep::trivial(FiniteGroup::cyclic(1), fl.algebra.carrier());
        GSLAlgebra tl{fl.algebra, triv};
        GradedModule m2;
        m2.add(0, "1");
        m2.add(2, "x");
        CdgaModel a_plain(m2);
        a_plain.set_product({2, 0}, {2, 0}, QVec(0));
        PiReport rep7 = mapping_space_pi(a_plain, tl, 7);
        std::vector<int> want{2, 0, 3, 0, 3, 0, 5};
        for (int n = 1; n <= 7; ++n) CHECK(rep7.dim_at(n) == want[n - 1]);
    }
    SUBCASE("the connectivity guard refuses low-connectivity algebras") {
        SLAlgebra low = free_lie({{{"u", 1}}, 2, Convention::Shifted});
        GSLAlgebra gll{low, GroupRep::trivial(FiniteGroup::cyclic(2), low.carrier())};
        CHECK_THROWS_AS(mapping_space_pi(a, gll, 4), HypothesisError);
    }
}

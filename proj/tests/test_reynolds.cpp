#include <gtest/gtest.h>

#include <random>

#include "superflow/errors.hpp"
#include "superflow/reynolds.hpp"
#include "test_util.hpp"

using namespace superflow;

namespace {

const std::vector<std::string> XYZ{"x", "y", "z"};

MPoly P(const char* s) { return parse_poly(s, XYZ); }

VectorField F(std::initializer_list<const char*> comps) {
    std::vector<MPoly> v;
    for (auto c : comps) v.push_back(P(c));
    return VectorField(v);
}

// Row space equality of two bases, via rank of the stacked coefficient matrix.
bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
    if (a.size() != b.size()) return false;
    std::vector<VectorField> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::map<std::pair<int, Monomial>, int, decltype([](const auto& l, const auto& r) {
                 return l.first != r.first ? l.first < r.first : GrlexDesc{}(l.second, r.second);
             })> cols;
    for (const auto& v : all)
        for (int c = 0; c < v.dim(); ++c)
            for (const auto& [m, k] : v.numerator(c).terms()) cols.try_emplace({c, m}, 0);
    int w = 0;
    for (auto& [key, id] : cols) id = w++;
    auto build = [&](const std::vector<VectorField>& vs) {
        RatMatrix m(static_cast<int>(vs.size()), w);
        for (int i = 0; i < static_cast<int>(vs.size()); ++i)
            for (int c = 0; c < vs[i].dim(); ++c)
                for (const auto& [mono, k] : vs[i].numerator(c).terms()) m(i, cols[{c, mono}]) = k;
        return m;
    };
    return rank(build(a)) == static_cast<int>(a.size()) && rank(build(all)) == static_cast<int>(a.size());
}

}  // namespace

TEST(Reynolds, ProjectionExamples) {
    VectorField s = F({"y*z", "x*z", "x*y"});
    EXPECT_EQ(reynolds_project(builtin_group("That"), s), s);
    EXPECT_TRUE(reynolds_project(builtin_group("O"), s).is_zero());
    EXPECT_TRUE(reynolds_project(builtin_group("O"), F({"0", "0", "0"})).is_zero());
}

TEST(Reynolds, OctahedralAverageOracle) {
    // oracle: explicit sum over the 24 elements, then divide
    FiniteGroup o = builtin_group("O");
    VectorField s = F({"y*z", "x*z", "x*y"});
    std::vector<MPoly> acc(3, MPoly(3));
    for (const auto& e : o.elements) {
        RatMatrix inv = inverse(e);
        std::vector<MPoly> moved;
        for (int i = 0; i < 3; ++i) moved.push_back(compose_linear(s.numerator(i), e));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc[i] += moved[j] * inv(i, j);
    }
    for (const auto& p : acc) EXPECT_TRUE(p.is_zero());
}

TEST(Reynolds, RejectsApproxGroup) {
    EXPECT_THROW(reynolds_project(builtin_group("icosa"), F({"y*z", "x*z", "x*y"})), DomainError);
    EXPECT_THROW(invariant_vf_basis(builtin_group("icosa"), 2), DomainError);
}

TEST(Reynolds, IdempotentAndInvariant) {
    std::mt19937 rng(21);
    FiniteGroup th = builtin_group("That");
    for (int trial = 0; trial < 5; ++trial) {
        int d = 2 + trial % 3;
        VectorField v({fixtures::random_homogeneous(rng, 3, d, 5), fixtures::random_homogeneous(rng, 3, d, 5),
                       fixtures::random_homogeneous(rng, 3, d, 5)});
        VectorField p = reynolds_project(th, v);
        EXPECT_EQ(reynolds_project(th, p), p);
        for (const auto& e : th.generators) EXPECT_EQ(conjugate_field(p, e), p);
    }
}

TEST(InvariantBasis, PaperExamples) {
    VFSpace t2 = invariant_vf_basis(builtin_group("That"), 2);
    ASSERT_EQ(t2.dim(), 1);
    EXPECT_EQ(t2.basis[0], F({"y*z", "x*z", "x*y"}));

    VFSpace o4 = invariant_vf_basis(builtin_group("O"), 4);
    ASSERT_EQ(o4.dim(), 1);
    EXPECT_TRUE(same_span(o4.basis, {F({"y^3*z - y*z^3", "z^3*x - z*x^3", "x^3*y - x*y^3"})}));

    VFSpace k2 = invariant_vf_basis(builtin_group("klein4"), 2);
    EXPECT_EQ(k2.dim(), 3);
    EXPECT_TRUE(same_span(k2.basis, {F({"y*z", "0", "0"}), F({"0", "x*z", "0"}), F({"0", "0", "x*y"})}));

    EXPECT_EQ(invariant_vf_basis(builtin_group("That"), 4).dim(), 2);
}

TEST(InvariantBasis, Forms) {
    auto o2 = invariant_form_basis(builtin_group("O"), 2);
    ASSERT_EQ(o2.size(), 1u);
    EXPECT_EQ(primitive_part(o2[0]), P("x^2+y^2+z^2"));
    auto t3 = invariant_form_basis(builtin_group("That"), 3);
    ASSERT_EQ(t3.size(), 1u);
    EXPECT_EQ(t3[0], P("x*y*z"));
    EXPECT_TRUE(invariant_form_basis(builtin_group("O"), 1).empty());
    // degree-9 octahedral invariant from the generator list
    auto o9 = invariant_form_basis(builtin_group("O"), 9);
    ASSERT_EQ(o9.size(), 1u);
    EXPECT_EQ(primitive_part(o9[0]),
              primitive_part(P("x^5*y^3*z + y^5*z^3*x + z^5*x^3*y - x^5*z^3*y - y^5*x^3*z - z^5*y^3*x")));
}

TEST(InvariantBasis, OrbitPathMatchesAveraging) {
    for (const char* name : {"klein4", "That", "O", "Ohat"}) {
        FiniteGroup g = builtin_group(name);
        for (int ell = 1; ell <= 6; ++ell) {
            VFSpace a = invariant_vf_basis(g, ell, ReynoldsPath::orbit);
            VFSpace b = invariant_vf_basis(g, ell, ReynoldsPath::averaging);
            ASSERT_EQ(a.dim(), b.dim()) << name << " " << ell;
            for (int i = 0; i < a.dim(); ++i) EXPECT_EQ(a.basis[i], b.basis[i]) << name << " " << ell;
        }
    }
}

TEST(InvariantBasis, DimensionTablesMatchClosedForms) {
    FiniteGroup th = builtin_group("That"), o = builtin_group("O"), t = builtin_group("T");
    for (int ell = 2; ell <= 12; ell += 2) {
        int dth = invariant_vf_basis(th, ell).dim(), dof = invariant_vf_basis(o, ell).dim();
        EXPECT_EQ(dth, closed_form_dims("tetra_full", ell)) << ell;
        EXPECT_EQ(dof, closed_form_dims("octa", ell)) << ell;
        EXPECT_EQ(invariant_vf_basis(t, ell).dim(), dth + dof) << ell;
    }
}

TEST(InvariantBasis, ExtensionOfSymmetryAtDegreeTwo) {
    EXPECT_TRUE(same_span(invariant_vf_basis(builtin_group("T"), 2).basis, invariant_vf_basis(builtin_group("That"), 2).basis));
}

TEST(ClosedForm, Examples) {
    EXPECT_EQ(closed_form_dims("tetra_full", 2), 1);
    EXPECT_EQ(closed_form_dims("octa", 2), 0);
    EXPECT_EQ(closed_form_dims("octa_solenoidal_sphere", 4), 1);
    std::vector<int> full, sol, sph;
    for (int ell = 2; ell <= 16; ell += 2) {
        full.push_back(closed_form_dims("tetra_full", ell));
        sol.push_back(closed_form_dims("tetra_full_solenoidal", ell));
        sph.push_back(closed_form_dims("octa_solenoidal_sphere", ell));
    }
    EXPECT_EQ(full, (std::vector<int>{1, 2, 4, 6, 9, 12, 16, 20}));
    EXPECT_EQ(sol, (std::vector<int>{1, 1, 3, 4, 6, 8, 11, 13}));
    EXPECT_EQ(sph, (std::vector<int>{0, 1, 2, 3, 4, 6, 7, 9}));
    EXPECT_THROW(closed_form_dims("octa", 3), DomainError);
    EXPECT_THROW(closed_form_dims("cube", 2), DomainError);
}

TEST(SolenoidalDims, Examples) {
    EXPECT_EQ(solenoidal_and_sphere_dims(builtin_group("That"), 4).solenoidal, 1);
    EXPECT_EQ(solenoidal_and_sphere_dims(builtin_group("O"), 6).both, 2);
    SolenoidalSphereDims z = solenoidal_and_sphere_dims(builtin_group("O"), 2);
    EXPECT_EQ(z.both, 0);
    EXPECT_EQ(z.solenoidal, 0);
}

TEST(SolenoidalDims, SequencesThroughTwelve) {
    FiniteGroup th = builtin_group("That"), o = builtin_group("O");
    for (int ell = 2; ell <= 12; ell += 2) {
        EXPECT_EQ(solenoidal_and_sphere_dims(th, ell).solenoidal, closed_form_dims("tetra_full_solenoidal", ell)) << ell;
        EXPECT_EQ(solenoidal_and_sphere_dims(o, ell).both, closed_form_dims("octa_solenoidal_sphere", ell)) << ell;
    }
}

TEST(Superflow, Discovery) {
    SuperflowReport t = find_superflow(builtin_group("That"), SuperflowMode::polynomial, 8);
    EXPECT_EQ(t.degree, 2);
    EXPECT_TRUE(t.unique);
    EXPECT_EQ(*t.field, F({"y*z", "x*z", "x*y"}));
    EXPECT_TRUE(t.solenoidal);
    EXPECT_FALSE(t.sphere_tangent);

    SuperflowReport o = find_superflow(builtin_group("O"), SuperflowMode::projective, 8);
    EXPECT_EQ(o.degree, 4);
    ASSERT_TRUE(o.denominator);
    EXPECT_EQ(*o.denominator, P("x^2+y^2+z^2"));
    EXPECT_EQ(o.field->numerators(), F({"y^3*z - y*z^3", "z^3*x - z*x^3", "x^3*y - x*y^3"}).numerators());
    EXPECT_EQ(o.field->degree(), 2);
    EXPECT_TRUE(o.solenoidal);
    EXPECT_TRUE(o.sphere_tangent);
    EXPECT_TRUE(o.failure.empty());

    SuperflowReport k = find_superflow(builtin_group("klein4"), SuperflowMode::polynomial, 8);
    EXPECT_EQ(k.degree, 2);
    EXPECT_EQ(k.dim, 3);
    EXPECT_FALSE(k.unique);
    EXPECT_FALSE(k.field);
}

TEST(Superflow, FieldInvariantUnderEveryElement) {
    for (const char* name : {"T", "That", "O", "Sn1(3)"}) {
        FiniteGroup g = builtin_group(name);
        SuperflowReport r = find_superflow(g, SuperflowMode::polynomial, 10);
        ASSERT_TRUE(r.field) << name;
        for (const auto& e : g.elements) EXPECT_EQ(conjugate_field(*r.field, e), *r.field) << name;
    }
}

TEST(Superflow, NothingFound) {
    EXPECT_THROW(find_superflow(builtin_group("O"), SuperflowMode::polynomial, 2), DomainError);
}

TEST(Superflow, ApproxGroupVerifyOnly) {
    FiniteGroup d5 = builtin_group("dihedral", 5);
    std::vector<std::string> xy{"x", "y"};
    VectorField penki({parse_poly("x^4+4*x^3*y-6*x^2*y^2-4*x*y^3+y^4", xy), parse_poly("x^4-4*x^3*y-6*x^2*y^2+4*x*y^3+y^4", xy)},
                      parse_poly("x^2+y^2", xy));
    EXPECT_TRUE(verify_invariant_field(d5, penki));
    VectorField wrong({parse_poly("x^2", xy), parse_poly("y^2", xy)});
    EXPECT_FALSE(verify_invariant_field(d5, wrong));
}

TEST(Superflow, HyperoctahedralDegreeSixteen) {
    FiniteGroup h = builtin_group("hyperoct", 5);
    SuperflowReport poly = find_superflow(h, SuperflowMode::polynomial, 16);
    EXPECT_EQ(poly.degree, 16);
    EXPECT_TRUE(poly.unique);
    ASSERT_TRUE(poly.field);
    EXPECT_EQ(poly.field->degree(), 16);

    SuperflowReport proj = find_superflow(h, SuperflowMode::projective, 16);
    EXPECT_EQ(proj.degree, 16);
    EXPECT_GT(proj.denominator_dim, 1);
    EXPECT_FALSE(proj.denominator);
    EXPECT_FALSE(proj.failure.empty());
}

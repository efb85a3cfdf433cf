#include <gtest/gtest.h>

#include "superflow/errors.hpp"
#include "superflow/groups.hpp"
#include "superflow/reynolds.hpp"

using namespace superflow;

TEST(Groups, PaperOrders) {
    EXPECT_EQ(builtin_group("That").order(), 24);
    EXPECT_EQ(builtin_group("O").order(), 24);
    EXPECT_EQ(builtin_group("Ohat").order(), 48);
    EXPECT_EQ(builtin_group("T").order(), 12);
    EXPECT_EQ(builtin_group("klein4").order(), 4);
    EXPECT_EQ(builtin_group("hyperoct", 5).order(), 1920);
    EXPECT_EQ(builtin_group("hyperoct_full(5)").order(), 3840);
    EXPECT_EQ(builtin_group("dihedral", 5).order(), 10);
    EXPECT_EQ(builtin_group("dihedral", 7).order(), 14);
    FiniteGroup ico = builtin_group("icosa");
    EXPECT_EQ(ico.order(), 60);
    EXPECT_EQ(ico.kind, GroupKind::approx);
    EXPECT_EQ(close_group({RatMatrix::identity(3)}).order(), 1);
}

TEST(Groups, SymmetricGroupRepresentation) {
    FiniteGroup s4 = builtin_group("Sn1", 3);
    EXPECT_EQ(s4.order(), 24);
    EXPECT_TRUE(s4.is_exact());
    for (const auto& m : s4.elements)
        for (const auto& v : m.a) EXPECT_EQ(v.get_den(), 1);
    EXPECT_EQ(builtin_group("Sn1", 4).order(), 120);
}

TEST(Groups, HyperoctahedralIsOrientationPreserving) {
    FiniteGroup h = builtin_group("hyperoct", 5);
    for (const auto& m : h.elements) EXPECT_EQ(determinant(m), 1);
    EXPECT_TRUE(h.signed_permutations());
}

TEST(Groups, Errors) {
    EXPECT_THROW(builtin_group("nope"), DomainError);
    EXPECT_THROW(builtin_group("dihedral", 4), DomainError);
    EXPECT_THROW(builtin_group("hyperoct", 4), DomainError);
    EXPECT_THROW(close_group({RatMatrix::identity(2), RatMatrix::identity(3)}), DomainError);
    RatMatrix shear{{1, 1}, {0, 1}};
    EXPECT_THROW(close_group({shear}, 50), GroupTooLarge);
    EXPECT_THROW(close_group({builtin_group("O").generators[0]}, 1), GroupTooLarge);
}

TEST(Groups, IdentityAndInverseClosure) {
    for (const char* name : {"klein4", "T", "That", "O", "Ohat", "Sn1(3)", "hyperoct(3)"}) {
        FiniteGroup g = builtin_group(name);
        EXPECT_TRUE(g.contains(RatMatrix::identity(g.dim))) << name;
        for (const auto& e : g.elements) EXPECT_TRUE(g.contains(inverse(e))) << name;
    }
    for (const char* name : {"dihedral(5)", "icosa"}) {
        FiniteGroup g = builtin_group(name);
        EXPECT_TRUE(g.contains(RealMatrix::identity(g.dim))) << name;
        for (const auto& e : g.real_elements) EXPECT_TRUE(g.contains(inverse(e))) << name;
    }
}

TEST(Groups, SubgroupOrdersDivide) {
    FiniteGroup t = builtin_group("T"), th = builtin_group("That"), o = builtin_group("O");
    for (const auto& gen : t.generators) {
        EXPECT_TRUE(th.contains(gen));
        EXPECT_TRUE(o.contains(gen));
    }
    EXPECT_EQ(th.order() % t.order(), 0);
    EXPECT_EQ(o.order() % t.order(), 0);
}

TEST(Groups, TetrahedralMeetsOctahedralInRotations) {
    FiniteGroup meet = intersect(builtin_group("That"), builtin_group("O"));
    FiniteGroup t = builtin_group("T");
    EXPECT_EQ(meet.order(), 12);
    for (const auto& e : t.elements) EXPECT_TRUE(meet.contains(e));
}

TEST(Groups, ApproxClosureStable) {
    for (const char* name : {"icosa", "dihedral(9)"}) {
        FiniteGroup g = builtin_group(name);
        FiniteGroup again = close_group(g.real_elements);
        EXPECT_EQ(again.order(), g.order()) << name;
    }
}

TEST(Molien, TetrahedralLowDegrees) {
    auto dims = molien_dims(builtin_group("That"), 4);
    EXPECT_EQ(dims[2], 1);
    EXPECT_EQ(dims[3], 1);
    EXPECT_EQ(dims[4], 2);
    // brute-force averaging oracle
    FiniteGroup th = builtin_group("That");
    for (int d = 0; d <= 6; ++d)
        EXPECT_EQ(invariant_form_basis(th, d, ReynoldsPath::averaging).size(),
                  invariant_form_basis(th, d, ReynoldsPath::orbit).size());
}

TEST(Molien, OctahedralDegreeNine) {
    FiniteGroup o = builtin_group("O");
    EXPECT_EQ(molien_dims(o, 9)[9], 1);
    EXPECT_EQ(invariant_form_basis(o, 9, ReynoldsPath::averaging).size(), 1u);
}

TEST(Molien, IdentityGroupCountsAllMonomials) {
    auto dims = molien_dims(close_group({RatMatrix::identity(2)}), 10);
    for (int d = 0; d <= 10; ++d) EXPECT_EQ(dims[d], d + 1);
}

TEST(Molien, MonotoneUnderSubgroups) {
    auto t = molien_dims(builtin_group("T"), 10), th = molien_dims(builtin_group("That"), 10),
         o = molien_dims(builtin_group("O"), 10), oh = molien_dims(builtin_group("Ohat"), 10);
    for (int d = 0; d <= 10; ++d) {
        EXPECT_LE(th[d], t[d]);
        EXPECT_LE(o[d], t[d]);
        EXPECT_LE(oh[d], th[d]);
        EXPECT_LE(oh[d], o[d]);
    }
}

TEST(Molien, NonSignedPermutationGroup) {
    // S4 acting through its 3-dim standard representation: invariants in degrees 2,3,4
    auto dims = molien_dims(builtin_group("Sn1", 3), 4);
    EXPECT_EQ(dims[1], 0);
    EXPECT_EQ(dims[2], 1);
    EXPECT_EQ(dims[3], 1);
    EXPECT_EQ(dims[4], 2);
}

TEST(Molien, ApproxGroupRejected) { EXPECT_THROW(molien_dims(builtin_group("icosa"), 2), DomainError); }

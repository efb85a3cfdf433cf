#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "superflow/closedform.hpp"
#include "superflow/elliptic.hpp"
#include "superflow/errors.hpp"
#include "superflow/flows.hpp"

using namespace superflow;

namespace {

const double kS2 = std::numbers::sqrt2, kS3 = std::numbers::sqrt3;

Series rats(std::initializer_list<const char*> xs) {
    Series r;
    for (const char* s : xs) r.push_back(parse_rat(s));
    return r;
}

void expect_pass(const SeriesMatchReport& r) {
    EXPECT_TRUE(r.pass) << r.theorem << " exact " << r.max_exact_mismatch << " numeric " << r.max_numeric_mismatch;
}

}  // namespace

//--- ray series route ---------------------------------------------------------------------

TEST(RaySeries, AgreesWithMultivariateTaylor) {
    FlowSeries s = taylor_projective(octa_field(), 7);
    auto ray = ray_series(octa_field(), std::vector<Rat>{3, 2, 1}, 7);
    for (int j = 0; j < 3; ++j) {
        std::vector<Rat> c = ray_coefficients(s, j, {3, 2, 1});
        for (int i = 0; i < 7; ++i) EXPECT_EQ(ray[j][i + 1], c[i]) << j << " " << i;
    }
    EXPECT_EQ(ray[0][0], 0);
}

//--- tetrahedral ----------------------------------------------------------------------------

TEST(TetraU, SeriesFixtures) {
    Series ref = rats({"0", "3", "2", "15/2", "41/3", "253/8", "3349/60", "5557/48", "555509/2520", "5934937/13440"});
    EXPECT_EQ(tetra_U_series(10), ref);
    EXPECT_EQ(ray_series(tetra_field(), std::vector<Rat>{3, 1, 2}, 9)[0], ref);
    Series trig = rats({"0", "5", "20", "205/2", "470", "17635/8", "20527/2", "765869/16", "6247769/28",
                        "932089729/896"});
    EXPECT_EQ(tetra_U_trig_series(10), trig);
    EXPECT_EQ(ray_series(tetra_field(), std::vector<Rat>{5, 4, 5}, 9)[0], trig);
}

TEST(TetraU, Reports) {
    expect_pass(verify_theorem("thm-s4", 9));
    expect_pass(verify_theorem("thm-s4-trig", 9));
}

TEST(TetraU, FixedRayAndRegion) {
    // on y = 0, z = x the flow is x/cos x
    EXPECT_NEAR(tetra_U(0.7, 0, 0.7), 0.7 / std::cos(0.7), 1e-15);
    EXPECT_NEAR(tetra_U(0.7, 0, 0.7), flow_point(tetra_field(), {0.7, 0, 0.7}, 1, 1e-12)[0], 1e-10);
    EXPECT_THROW(tetra_U(1, 2, 3), DomainError);
    EXPECT_THROW(tetra_U(1, 0.5, 0.4), DomainError);  // z² < y²
}

TEST(TetraU, KleinSymmetries) {
    for (auto [x, y, z] : {std::array<double, 3>{0.3, 0.1, 0.2}, {0.5, -0.2, 0.35}, {-0.4, 0.1, -0.3}}) {
        double u = tetra_U(x, y, z);
        EXPECT_NEAR(u, -tetra_U(-x, -y, z), 1e-12);
        EXPECT_NEAR(u, -tetra_U(-x, y, -z), 1e-12);
    }
}

TEST(TetraU, ProjectiveScaling) {
    // U(λp)/λ is the time-λ flow from p
    VectorField v = tetra_field();
    for (double lambda : {2.0, 1.0 / 3}) {
        std::vector<double> p{0.3, 0.1, 0.2};
        double direct = flow_point(v, p, lambda, 1e-12)[0];
        EXPECT_NEAR(tetra_U(lambda * p[0], lambda * p[1], lambda * p[2]) / lambda, direct, 1e-10);
    }
}

TEST(TetraU, AgreesWithIntegrator) {
    std::vector<double> p{0.9, 0.2, 0.6};
    EXPECT_NEAR(tetra_U(p[0], p[1], p[2]), flow_point(tetra_field(), p, 1, 1e-12)[0], 1e-9);
}

//--- Dixonian --------------------------------------------------------------------------------

TEST(Dixonian, Report) { expect_pass(verify_theorem("thm2", 8)); }

TEST(Dixonian, DiagonalIsIdentityToFirstOrder) {
    // ς = 0 on x = y forces sm = 0, cm = 1
    auto [a, b] = lambda_dixon(0.4, 0.4);
    EXPECT_EQ(a, 0.4);
    EXPECT_EQ(b, 0.4);
    auto [c, d] = lambda_dixon(0.01, 0.01 * (1 + 1e-9));
    auto f = flow_point(dixon_field(), {0.01, 0.01 * (1 + 1e-9)}, 1, 1e-12);
    EXPECT_NEAR(c, f[0], 1e-12);
    EXPECT_NEAR(d, f[1], 1e-12);
}

TEST(Dixonian, FirstIntegralConserved) {
    for (auto [x, y] : {std::pair{0.3, 0.2}, {0.2, 0.5}, {0.6, 0.7}}) {
        auto [a, b] = lambda_dixon(x, y);
        EXPECT_NEAR(a * b * (a - b), x * y * (x - y), 1e-13);
        auto f = flow_point(dixon_field(), {x, y}, 1, 1e-12);
        EXPECT_NEAR(a, f[0], 1e-10);
        EXPECT_NEAR(b, f[1], 1e-10);
    }
    EXPECT_THROW(lambda_dixon(1, 4), DomainError);
}

//--- octahedral, singular orbit ------------------------------------------------------------------

TEST(OctaSingular, Report) {
    SeriesMatchReport r = verify_theorem("thm-spec", 8);
    expect_pass(r);
    ASSERT_TRUE(r.invariant_deviation);
    EXPECT_LT(*r.invariant_deviation, 1e-12);
}

TEST(OctaSingular, JSymmetries) {
    for (auto [x, y, z] : {std::array<double, 3>{3, 2, 1}, {0.3, 0.1, 0.2}, {1.1, 0.4, 0.7}}) {
        cplx j = octa_J_singular(x, y, z);
        EXPECT_LT(std::abs(octa_J_singular(-x, y, z) * j + 1.0), 1e-12);
    }
}

TEST(OctaSingular, BoundaryCondition) {
    // V(xt,yt,zt)/t = x + O(t)
    double t = 1e-6;
    EXPECT_NEAR(octa_V_singular(3 * t, 2 * t, t) / t, 3, 1e-6);
    EXPECT_NEAR(octa_V_singular(0.5 * t, 0.25 * t, 0.25 * t) / t, 0.5, 1e-6);
}

TEST(OctaSingular, AgreesWithIntegratorAndConservesLevel) {
    ClosedFormContext ctx;
    std::vector<double> p{0.9, 0.6, 0.3};
    double v = octa_V_singular(p[0], p[1], p[2], &ctx);
    auto f = flow_point(octa_field(), p, 1, 1e-12);
    EXPECT_NEAR(v, f[0], 1e-10);
    ASSERT_TRUE(ctx.level);
    EXPECT_NEAR(*ctx.level, 2, 1e-12);
    double s2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2], q = std::pow(f[0], 4) + std::pow(f[1], 4) + std::pow(f[2], 4);
    EXPECT_NEAR(s2 * s2 / q, 2, 1e-9);
    EXPECT_THROW(octa_V_singular(1, 0.3, 0.3), DomainError);
}

//--- octahedral, generic orbit --------------------------------------------------------------------

TEST(OctaGeneric, SeriesFixture) {
    Series ref = rats({"1", "0", "1/18", "0", "-13/648", "0", "-53/19440", "0", "7663/4199040", "0", "76183/377913600"});
    EXPECT_EQ(octa_generic_ratio_series(11), ref);
}

TEST(OctaGeneric, Report) {
    SeriesMatchReport r = verify_theorem("thm4", 10);
    expect_pass(r);
    ASSERT_TRUE(r.invariant_deviation);
    EXPECT_LT(*r.invariant_deviation, 1e-12);
}

TEST(OctaGeneric, LIsDerivativeSquare) {
    // L = 4K³ − (16/27)K on the orbit
    for (double t : {0.1, 0.5, 1.0}) {
        double x = kS2 * t, y = t;
        double k = octa_K(x, y, 0), l = octa_L(x, y, 0);
        EXPECT_NEAR(l, 4 * k * k * k - 16.0 / 27 * k, 1e-13 * std::max(1.0, std::abs(l)));
    }
    // a general point: the identity is rational in (x,y,z)
    double x = 0.9, y = 0.3, z = 0.2;
    double k = octa_K(x, y, z);
    EXPECT_NEAR(octa_L(x, y, z), 4 * k * k * k - 16.0 / 27 * k, 1e-13 * std::abs(octa_L(x, y, z)));
}

TEST(OctaGeneric, IntermediateJOnRay) {
    for (double t : {0.02, 0.07, 0.1}) {
        ClosedFormContext ctx;
        octa_V_generic(kS2 * t, t, 0, &ctx);
        WpValue w = weierstrass_p(cplx(t * kS3, 0));
        double p = w.p.real(), dp = w.dp.real();
        cplx expect(16 / p, -12 * kS3 * dp / std::pow(p, 1.5));
        EXPECT_LT(std::abs(*ctx.J - expect), 1e-9 * std::abs(expect));
    }
}

TEST(OctaGeneric, UpsilonCubicConsistency) {
    // 3P(3P−1)(3P−2) = −Υ at P = V²/ς²
    for (double t : {0.05, 0.3, 0.8}) {
        ClosedFormContext ctx;
        double v = octa_V_generic(kS2 * t, t, 0, &ctx);
        double P = v * v / (3 * t * t);
        EXPECT_NEAR(3 * P * (3 * P - 1) * (3 * P - 2), -ctx.T->real(), 1e-12);
    }
}

TEST(OctaGeneric, AgreesWithIntegratorAndCardanoRoots) {
    // an interior point of the level 9/5 branch: x² = 0.7, y² + z² = 0.3, x⁴+y⁴+z⁴ = 5/9
    double x2 = 0.7, r = 0.3, q = 5.0 / 9 - x2 * x2;  // y⁴ + z⁴
    double prod = (r * r - q) / 2;                    // y²z²
    double y2 = (r + std::sqrt(r * r - 4 * prod)) / 2, z2 = r - y2;
    std::vector<double> p{std::sqrt(x2), std::sqrt(y2), std::sqrt(z2)};
    ClosedFormContext ctx;
    double v = octa_V_generic(p[0], p[1], p[2], &ctx);
    auto f = flow_point(octa_field(), p, 1, 1e-12);
    EXPECT_NEAR(v, f[0], 1e-9);
    // the other two Cardano roots are the remaining squared coordinates of the image
    CardanoRoots roots = cardano_branch({27, -27, 6, ctx.T->real()});
    EXPECT_NEAR(roots.roots[0].real(), f[0] * f[0], 1e-9);
    std::array<double, 2> rest{roots.roots[1].real(), roots.roots[2].real()};
    std::sort(rest.begin(), rest.end());
    std::array<double, 2> sq{f[1] * f[1], f[2] * f[2]};
    std::sort(sq.begin(), sq.end());
    EXPECT_NEAR(rest[0], sq[0], 1e-9);
    EXPECT_NEAR(rest[1], sq[1], 1e-9);
    EXPECT_THROW(octa_V_generic(0.5, 0.5, 0.5), DomainError);
}

//--- Cardano -----------------------------------------------------------------------------------

TEST(Cardano, VietaAtUnitW) {
    // P(2P−1)² = 8W/(27(W+1)²) at W = 1
    CardanoRoots r = cardano_branch({4, -4, 1, -2.0 / 27});
    EXPECT_LT(std::abs(r.sum - 1.0), 1e-14);
    EXPECT_LT(std::abs(r.square_sum - 0.5), 1e-14);
}

TEST(Cardano, FactoredCubic) {
    CardanoRoots r = cardano_branch({27, -27, 6, 0});
    std::vector<double> re;
    for (cplx z : r.roots) {
        EXPECT_LT(std::abs(z.imag()), 1e-14);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    EXPECT_NEAR(re[0], 0, 1e-14);
    EXPECT_NEAR(re[1], 1.0 / 3, 1e-14);
    EXPECT_NEAR(re[2], 2.0 / 3, 1e-14);
}

TEST(Cardano, LabelledRootAtUpsilonMinimum) {
    double u0 = upsilon(0);
    EXPECT_NEAR(u0, -2 / (3 * kS3), 1e-12);
    CardanoRoots r = cardano_branch({27, -27, 6, u0});
    EXPECT_NEAR(r.roots[0].real(), (3 + 2 * kS3) / 9, 1e-7);
    EXPECT_THROW(cardano_branch({1, -3, 3, -1}), DomainError);
}

//--- 𝔻₅ ------------------------------------------------------------------------------------------

TEST(D5Gamma, Fixtures) {
    auto [first, swap] = d5_gamma_series(8);
    EXPECT_EQ(first, rats({"1", "-2", "8", "8", "-16", "-768/5", "2944/5", "84352/35", "-357632/35"}));
    Series s8(swap.begin(), swap.begin() + 8);
    EXPECT_EQ(s8, rats({"-1", "4", "-8", "-32", "160", "1216/5", "-13824/5", "-55808/35"}));
}

TEST(D5Gamma, Report) {
    expect_pass(d5_gamma_verify(8));
    EXPECT_THROW(d5_gamma_verify(13), DomainError);
}

TEST(D5Gamma, OrderOneIsIdentity) {
    FlowSeries s = taylor_projective(d5_field(), 1);
    EXPECT_EQ(s.term(0, 0), RatFunc(parse_poly("x", {"x", "y"})));
    EXPECT_EQ(s.term(1, 0), RatFunc(parse_poly("y", {"x", "y"})));
}

TEST(D5Gamma, ClosedFormOnRayNumerically) {
    // γ(x,−x)/γ(−x,x) = k(α(−1) + ⁵√8·x)
    auto [first, swap] = d5_gamma_series(30);
    double a = d5_alpha(-1);
    for (double x : {0.01, 0.05}) EXPECT_NEAR(*d5_k(a + std::pow(8.0, 0.2) * x), series_eval(swap, x), 1e-9);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "superflow/elliptic.hpp"
#include "superflow/errors.hpp"

using namespace superflow;

namespace {

double mod_distance(double a, double b, double period) { return std::abs(std::remainder(a - b, period)); }

}  // namespace

//--- Jacobi -----------------------------------------------------------------------------

TEST(Jacobi, Degenerations) {
    for (double u : {-2.0, 0.3, 1.7}) {
        JacobiTriple a = jacobi_snckdn(u, 0);
        EXPECT_EQ(a.sn, std::sin(u));
        EXPECT_EQ(a.cn, std::cos(u));
        EXPECT_EQ(a.dn, 1);
        EXPECT_EQ(jacobi_snckdn(u, 1).sn, std::tanh(u));
    }
    EXPECT_THROW(jacobi_snckdn(1, 1.5), DomainError);
}

TEST(Jacobi, Identities) {
    for (double k : {0.0, 0.3, std::sqrt(5.0 / 8), 0.9, 1.0})
        for (double u = -5; u <= 5; u += 0.125) {
            JacobiTriple t = jacobi_snckdn(u, k);
            EXPECT_NEAR(t.sn * t.sn + t.cn * t.cn, 1, 1e-13);
            EXPECT_NEAR(k * k * t.sn * t.sn + t.dn * t.dn, 1, 1e-13);
        }
}

TEST(Jacobi, LandenConsistency) {
    for (double k : {0.3, std::sqrt(5.0 / 8), 0.9})
        for (double u = -3; u <= 3; u += 0.25) {
            JacobiTriple a = jacobi_snckdn(u, k), b = jacobi_snckdn(u, k, 1);
            EXPECT_NEAR(a.sn, b.sn, 1e-13);
            EXPECT_NEAR(a.cn, b.cn, 1e-13);
            EXPECT_NEAR(a.dn, b.dn, 1e-13);
        }
}

TEST(Jacobi, SeriesAtFiveEighths) {
    Series s = jacobi_sn_series(make_rat(5, 8), 12);
    std::vector<Rat> odd{1, make_rat(-13, 48), make_rat(649, 7680), make_rat(-70837, 2580480),
                         make_rat(13141201, 1486356480), make_rat(-339204983, 118908518400)};
    for (int i = 0; i < 6; ++i) EXPECT_EQ(s[2 * i + 1], odd[i]) << i;
    for (int i = 0; i < 12; i += 2) EXPECT_EQ(s[i], 0);
}

TEST(Jacobi, SeriesMatchesClassicalPolynomials) {
    // u⁵/5!·(1+14m+m²) and −u⁷/7!·(1+135m+135m²+m³)
    for (Rat m : {make_rat(1, 3), make_rat(5, 8), Rat(2)}) {
        Series s = jacobi_sn_series(m, 8);
        EXPECT_EQ(s[5], (1 + 14 * m + m * m) / 120);
        EXPECT_EQ(s[7], -(1 + 135 * m + 135 * m * m + m * m * m) / 5040);
    }
}

TEST(Jacobi, SeriesAgreesWithAgm) {
    Series s = jacobi_sn_series(make_rat(5, 8), 30);
    for (double u : {0.1, 0.3, 0.5}) EXPECT_NEAR(series_eval(s, u), jacobi_snckdn(u, std::sqrt(5.0 / 8)).sn, 1e-14);
}

//--- Weierstrass -------------------------------------------------------------------------

TEST(Weierstrass, HalfPeriod) {
    double w = weierstrass_omega();
    EXPECT_NEAR(w, 2.1131881555, 1e-9);
    EXPECT_NEAR(weierstrass_omega_by_quadrature(), w, 1e-12);
}

TEST(Weierstrass, LaurentCoefficients) {
    Series c = weierstrass_laurent(18);
    EXPECT_EQ(c[0], 1);
    EXPECT_EQ(c[4], make_rat(4, 135));
    EXPECT_EQ(c[8], make_rat(16, 54675));
    EXPECT_EQ(c[12], make_rat(128, 95954625));
    EXPECT_EQ(c[16], Rat("256/44043172875"));
    EXPECT_EQ(c[20], Rat("2048/89187425071875"));
    for (int i : {2, 6, 10, 14, 18}) EXPECT_EQ(c[i], 0);
}

TEST(Weierstrass, SpecialValues) {
    double w = weierstrass_omega(), e = 2 / (3 * std::sqrt(3.0));
    using C = std::complex<double>;
    EXPECT_NEAR(weierstrass_p(C(w, 0)).p.real(), e, 1e-12);
    EXPECT_NEAR(weierstrass_p(C(0, w)).p.real(), -e, 1e-12);
    EXPECT_NEAR(std::abs(weierstrass_p(C(w, w)).p), 0, 1e-12);
    EXPECT_NEAR(std::abs(weierstrass_p(C(w, 0)).dp), 0, 1e-11);
    EXPECT_THROW(weierstrass_p(C(2 * w, 0)), NumericError);
}

TEST(Weierstrass, DifferentialEquation) {
    double w = weierstrass_omega();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-2 * w, 2 * w);
    for (int i = 0; i < 200; ++i) {
        std::complex<double> t(d(rng), i % 2 ? w : 0.0);
        if (std::abs(std::remainder(t.real(), 2 * w)) < 0.05 && t.imag() == 0) continue;
        WpValue v = weierstrass_p(t);
        auto res = v.dp * v.dp - (4.0 * v.p * v.p * v.p - (16.0 / 27) * v.p);
        EXPECT_LT(std::abs(res) / std::max(1.0, std::abs(v.dp * v.dp)), 1e-12);
    }
}

TEST(Weierstrass, DerivativeSignByFiniteDifference) {
    double h = 1e-5;
    for (double t : {0.3, 1.0, 1.9, 2.5, 3.7}) {
        double fd = (weierstrass_p({t + h, 0}).p.real() - weierstrass_p({t - h, 0}).p.real()) / (2 * h);
        EXPECT_NEAR(weierstrass_p({t, 0}).dp.real(), fd, 1e-6 * std::max(1.0, std::abs(fd)));
        double fu = (upsilon(t + h) - upsilon(t - h)) / (2 * h);
        EXPECT_NEAR(upsilon_prime(t), fu, 1e-7);
    }
}

TEST(Weierstrass, DuplicationAgainstSeries) {
    // series-only evaluation of ℘(2t) (|2t| <= ω/2) against the duplication route
    double w = weierstrass_omega();
    Series c = weierstrass_laurent(40);
    for (double t = 0.05; t <= w / 4; t += 0.05) {
        double z = 2 * t, p = 1 / (z * z);
        for (int i = 4; i < static_cast<int>(c.size()); i += 4) p += to_double(c[i]) * std::pow(z, i - 2);
        WpValue half = weierstrass_p({t, 0});
        double P = half.p.real(), D = half.dp.real(), S = 6 * P * P - 8.0 / 27;
        double dup = S * S / (4 * D * D) - 2 * P;
        EXPECT_NEAR(dup, p, 1e-11 * std::max(1.0, std::abs(p)));
    }
}

TEST(Weierstrass, UpsilonNonPositivePeriodic) {
    double w = weierstrass_omega();
    for (double t = 0; t <= 2 * w; t += 0.01) {
        double u = upsilon(t);
        EXPECT_LE(u, 1e-14);
        EXPECT_LE(4 * u * u - 16.0 / 27, 1e-12);
        EXPECT_NEAR(upsilon(t + 2 * w), u, 1e-10);
    }
}

TEST(Weierstrass, AdditionFormula) {
    double w = weierstrass_omega();
    for (double u : {0.2, 0.7, 1.4, 3.0}) EXPECT_NEAR(weierstrass_addition(u, w), upsilon(u - w), 1e-10);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(0.2, 1.5);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        double u = d(rng), v = d(rng);
        worst = std::max(worst, std::abs(weierstrass_addition(u, v) - upsilon(u - v)));
    }
    EXPECT_LT(worst, 1e-9);
}

//--- Dixon --------------------------------------------------------------------------------

TEST(Dixon, Anchor) {
    auto [s, c] = dixon_smcm(0);
    EXPECT_EQ(s, 0);
    EXPECT_EQ(c, 1);
    Series sm = dixon_sm_series(8), cm = dixon_cm_series(8);
    EXPECT_EQ(sm[1], 1);
    EXPECT_EQ(sm[4], make_rat(-1, 6));
    EXPECT_EQ(cm[3], make_rat(-1, 3));
}

TEST(Dixon, CubicRelationAndDerivative) {
    for (double u = -1.5; u <= 1.5; u += 0.05) {
        auto [s, c] = dixon_smcm(u);
        EXPECT_NEAR(s * s * s + c * c * c, 1, 1e-12) << u;
    }
    // central differences: error O(h²)
    double u = 0.7, e1 = 0, e2 = 0;
    for (double h : {1e-2, 5e-3}) {
        double fd = (dixon_smcm(u + h).first - dixon_smcm(u - h).first) / (2 * h);
        double c = dixon_smcm(u).second;
        (h == 1e-2 ? e1 : e2) = std::abs(fd - c * c);
    }
    EXPECT_NEAR(e1 / e2, 4, 0.1);
}

//--- D5 abelian integral -------------------------------------------------------------------

TEST(D5, Polynomial) {
    const auto& ctx = d5_context();
    for (double xi : ctx.xi) EXPECT_NEAR(d5_W(xi), 0, 1e-11 * std::max(1.0, std::pow(std::abs(xi), 4)));
    EXPECT_LT(ctx.xi[1], ctx.xi[4]);
    EXPECT_LT(ctx.xi[4], ctx.xi[2]);
    EXPECT_LT(ctx.xi[2], ctx.xi[0]);
    EXPECT_LT(ctx.xi[0], ctx.xi[3]);
}

TEST(D5, PeriodsByBothRoutes) {
    const auto& ctx = d5_context();
    EXPECT_NEAR(ctx.Omega, 1.7162590512, 1e-8);
    EXPECT_NEAR(ctx.Xi, 2.4439543584, 1e-8);
    // (2/5)∫_{−1}^{1} and ∫_0^1
    EXPECT_NEAR(0.4 * d5_integral(-1, 1), ctx.Omega, 1e-10);
    EXPECT_NEAR(d5_integral(0, 1), ctx.Xi, 1e-10);
    // every arc between consecutive roots carries Ω
    for (double a : ctx.arcs) EXPECT_NEAR(a, ctx.Omega, 1e-10);
    EXPECT_NEAR(d5_integral(1, std::tan(2 * std::numbers::pi / 5)), 2 * ctx.Omega - ctx.Xi, 1e-10);
}

TEST(D5, AlphaAtRoots) {
    const auto& ctx = d5_context();
    double O = ctx.Omega, five = 5 * O;
    EXPECT_EQ(d5_alpha(1), 0);
    EXPECT_LT(mod_distance(d5_alpha(ctx.xi[3]), O, five), 1e-7);
    EXPECT_LT(mod_distance(d5_alpha(ctx.xi[2]), -O, five), 1e-7);
    EXPECT_LT(mod_distance(d5_alpha(ctx.xi[4]), -2 * O, five), 1e-7);
    EXPECT_LT(mod_distance(d5_alpha(ctx.xi[1]), -3 * O, five), 1e-7);
}

TEST(D5, AlphaInvolution) {
    double five = 5 * d5_context().Omega;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-8, 8);
    for (int i = 0; i < 20; ++i) {
        double x = d(rng);
        EXPECT_LT(mod_distance(d5_alpha(1 / x) + d5_alpha(x), 0, five), 1e-9) << x;
    }
}

TEST(D5, AlphaMobiusShift) {
    double O = d5_context().Omega;
    for (int j = 0; j < 5; ++j)
        for (double x : {-0.3, 0.6, 2.0}) {
            auto y = d5_mobius(j, x);
            ASSERT_TRUE(y);
            EXPECT_LT(mod_distance(d5_alpha(*y) - d5_alpha(x), 2 * j * O, 5 * O), 1e-9);
        }
}

TEST(D5, KValueTable) {
    const auto& ctx = d5_context();
    double O = ctx.Omega;
    EXPECT_NEAR(*d5_k(0), 1, 1e-12);
    EXPECT_NEAR(*d5_k(O), ctx.xi[3], 1e-7);
    EXPECT_NEAR(*d5_k(2 * O), ctx.xi[1], 1e-7);
    EXPECT_NEAR(*d5_k(3 * O), ctx.xi[4], 1e-7);
    EXPECT_NEAR(*d5_k(4 * O), ctx.xi[2], 1e-7);
    EXPECT_NEAR(*d5_k(O / 2), -ctx.xi[1], 1e-7);
    EXPECT_NEAR(*d5_k(5 * O / 2), -1, 1e-7);
    EXPECT_NEAR(*d5_k(5 * O - ctx.Xi), 0, 1e-7);
    auto near_pole = d5_k(ctx.Xi - 1e-9);
    EXPECT_TRUE(!near_pole || std::abs(*near_pole) > 1e6);
}

TEST(D5, KInverseAndSymmetries) {
    double O = d5_context().Omega;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> d(-6, 6);
    for (int i = 0; i < 10; ++i) {
        double t = d(rng);
        auto a = d5_k(t), b = d5_k(-t), c = d5_k(t + 5 * O);
        if (!a || !b || std::abs(*a) > 1e4 || std::abs(*b) > 1e4) continue;
        EXPECT_NEAR(*a * *b, 1, 1e-9);
        EXPECT_NEAR(*c, *a, 1e-9 * std::max(1.0, std::abs(*a)));
        for (int j = 1; j < 5; ++j) {
            auto shifted = d5_k(t + 2 * j * O), moved = d5_mobius(j, *a);
            if (shifted && moved && std::abs(*moved) < 1e4)
                EXPECT_NEAR(*shifted, *moved, 1e-8 * std::max(1.0, std::abs(*moved)));
        }
    }
    for (double x : {-1.5, 0.4, 3.0}) EXPECT_NEAR(*d5_k(d5_alpha(x)), x, 1e-9 * std::max(1.0, std::abs(x)));
}

TEST(D5, KDifferentialEquation) {
    // k′⁵ = 𝒲(k)⁴/(k²+1)⁵ with k′ from a five-point central stencil
    double h = 2e-4;
    for (double t : {0.2, 0.9, 2.6, 4.1, 6.0, 7.8}) {
        auto k = [](double s) { return *d5_k(s); };
        double kp = (k(t - 2 * h) - 8 * k(t - h) + 8 * k(t + h) - k(t + 2 * h)) / (12 * h);
        double x = k(t), rhs = std::pow(d5_W(x), 4) / std::pow(x * x + 1, 5);
        EXPECT_LT(std::abs(std::pow(kp, 5) - rhs), 1e-8 * std::max(1.0, rhs)) << t;
    }
}

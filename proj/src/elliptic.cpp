#include "superflow/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "superflow/errors.hpp"

namespace superflow {

using cplx = std::complex<double>;

//--- Jacobi ------------------------------------------------------------------------

JacobiTriple jacobi_snckdn(double u, double k, int extra_steps) {
    if (!(k >= 0 && k <= 1)) throw DomainError("modulus must lie in [0, 1]");
    JacobiTriple r{u, k, 0, 1, 1};
    if (k == 0) {
        r.sn = std::sin(u);
        r.cn = std::cos(u);
        return r;
    }
    if (k == 1) {
        r.sn = std::tanh(u);
        r.cn = r.dn = 1 / std::cosh(u);
        return r;
    }
    std::vector<double> a{1}, c{k};
    double b = std::sqrt((1 - k) * (1 + k));
    int extra = 0;
    while (true) {
        double an = a.back();
        a.push_back((an + b) / 2);
        c.push_back((an - b) / 2);
        b = std::sqrt(an * b);
        if (std::abs(c.back()) < 1e-16 * a.back() && extra++ >= extra_steps) break;
        if (a.size() > 64) break;
    }
    int n = static_cast<int>(a.size()) - 1;
    double phi = std::ldexp(a[n] * u, n);
    for (int i = n; i >= 1; --i) phi = (phi + std::asin(c[i] * std::sin(phi) / a[i])) / 2;
    r.sn = std::sin(phi);
    r.cn = std::cos(phi);
    r.dn = std::sqrt(1 - k * k * r.sn * r.sn);
    return r;
}

Series jacobi_sn_series(const Rat& m, int n) {
    // sn'' = −(1+m)·sn + 2m·sn³
    Series s(n);
    if (n > 1) s[1] = 1;
    for (int i = 0; i + 2 < n; ++i) {
        Series cube = series_mul(series_mul(s, s, i + 1), s, i + 1);
        s[i + 2] = (-(1 + m) * s[i] + 2 * m * cube[i]) / Rat((i + 2) * (i + 1));
    }
    return s;
}

//--- Weierstrass ----------------------------------------------------------------------

double weierstrass_omega() {
    return std::pow(3.0, 0.75) * std::pow(std::tgamma(0.25), 2) / (8 * std::sqrt(std::numbers::pi));
}

double weierstrass_omega_by_quadrature() {
    const double e1 = 2 / (3 * std::sqrt(3.0));  // e1² = g2/4
    // x = e1 + s² removes the endpoint singularity: dx/√(4x³−g2·x) = ds/√(x(x+e1))
    auto f = [&](double s) {
        double x = e1 + s * s;
        return 2 / std::sqrt(4 * x * (x + e1));
    };
    boost::math::quadrature::exp_sinh<double> integ;
    return integ.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
}

Series weierstrass_laurent(int max_power) {
    // ℘ = t^{−2} + Σ_{k≥2} c_k t^{2k−2}; c_2 = g2/20, c_3 = g3/28 = 0,
    // c_k = 3/((2k+1)(k−3)) Σ_{m=2}^{k−2} c_m c_{k−m}
    int kmax = max_power / 2 + 1;
    std::vector<Rat> c(std::max(kmax + 1, 4));
    c[2] = kWeierstrassG2 / 20;
    c[3] = 0;
    for (int k = 4; k <= kmax; ++k) {
        Rat s = 0;
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3 * s / Rat((2 * k + 1) * (k - 3));
    }
    Series out(max_power + 3);
    out[0] = 1;
    for (int k = 2; k <= kmax; ++k)
        if (2 * k - 2 <= max_power) out[2 * k] = c[k];
    return out;
}

namespace {

struct WpSeries {
    std::vector<double> c;  // c[k] multiplies t^{2k−2}, k >= 2
    WpSeries() {
        Series s = weierstrass_laurent(60);
        c.assign(32, 0.0);
        for (int k = 2; k < 32; ++k) c[k] = to_double(s[2 * k]);
    }
};

const WpSeries& wp_series() {
    static const WpSeries s;
    return s;
}

double wrap(double x, double period) {
    double r = std::remainder(x, period);  // in [−period/2, period/2]
    return r;
}

}  // namespace

WpValue weierstrass_p(cplx t) {
    const double w = weierstrass_omega(), g2 = 16.0 / 27;
    cplx z(wrap(t.real(), 2 * w), wrap(t.imag(), 2 * w));
    if (std::abs(z) < 1e-6) throw NumericError("argument too close to a lattice pole");
    int halvings = 0;
    while (std::abs(z) > w / 2) {
        z /= 2.0;
        ++halvings;
    }
    const auto& c = wp_series().c;
    cplx z2 = z * z, p = 1.0 / z2, dp = -2.0 / (z2 * z), pw = z2, dpw = z;
    for (int k = 2; k < static_cast<int>(c.size()); ++k) {
        p += c[k] * pw;
        dp += (2.0 * k - 2) * c[k] * dpw;
        pw *= z2;
        dpw *= z2;
    }
    for (int h = 0; h < halvings; ++h) {
        cplx s = 6.0 * p * p - g2 / 2;
        cplx p2 = s * s / (4.0 * dp * dp) - 2.0 * p;
        cplx dp2 = 3.0 * p * s / dp - s * s * s / (4.0 * dp * dp * dp) - dp;
        p = p2;
        dp = dp2;
    }
    return {p, dp};
}

double upsilon(double t) { return weierstrass_p(cplx(t, weierstrass_omega())).p.real(); }
double upsilon_prime(double t) { return weierstrass_p(cplx(t, weierstrass_omega())).dp.real(); }

double weierstrass_addition(double u, double v) {
    WpValue U = weierstrass_p(cplx(u, weierstrass_omega())), V = weierstrass_p(cplx(v, 0));
    double den = U.p.real() - V.p.real();
    if (std::abs(den) < 1e-12) throw NumericError("degenerate addition: Υ(u) = ℘(v)");
    double q = (U.dp.real() + V.dp.real()) / den;
    return q * q / 4 - U.p.real() - V.p.real();
}

//--- Dixon ----------------------------------------------------------------------------------

namespace {

// Local Taylor coefficients of s' = c², c' = −s² from (s0, c0).
template <class T>
void dixon_taylor(T s0, T c0, int n, std::vector<T>& s, std::vector<T>& c) {
    s.assign(n, T(0));
    c.assign(n, T(0));
    s[0] = s0;
    c[0] = c0;
    for (int k = 0; k + 1 < n; ++k) {
        T cc = T(0), ss = T(0);
        for (int i = 0; i <= k; ++i) {
            cc += c[i] * c[k - i];
            ss += s[i] * s[k - i];
        }
        s[k + 1] = cc / T(k + 1);
        c[k + 1] = -ss / T(k + 1);
    }
}

}  // namespace

Series dixon_sm_series(int n) {
    std::vector<Rat> s, c;
    dixon_taylor<Rat>(Rat(0), Rat(1), n, s, c);
    return s;
}

Series dixon_cm_series(int n) {
    std::vector<Rat> s, c;
    dixon_taylor<Rat>(Rat(0), Rat(1), n, s, c);
    return c;
}

std::pair<double, double> dixon_smcm(double u) {
    const int order = 30;
    double s = 0, c = 1, t = 0;
    std::vector<double> sc, cc;
    int guard = 0;
    while (t != u) {
        if (++guard > 100000) throw NumericError("Dixon stepping did not terminate");
        if (std::max(std::abs(s), std::abs(c)) > 1e6) throw NumericError("too close to a pole of sm/cm");
        dixon_taylor<double>(s, c, order, sc, cc);
        // radius estimate from the last few coefficients (the series skips powers)
        double radius = 1e9;
        for (int k = order - 3; k < order; ++k)
            for (double a : {sc[k], cc[k]})
                if (a != 0) radius = std::min(radius, std::pow(std::abs(a), -1.0 / k));
        double h = std::min(std::abs(u - t), 0.35 * radius);
        if (u < t) h = -h;
        double ns = 0, nc = 0;
        for (int k = order - 1; k >= 0; --k) {
            ns = ns * h + sc[k];
            nc = nc * h + cc[k];
        }
        s = ns;
        c = nc;
        t = (std::abs(u - t) <= std::abs(h)) ? u : t + h;
    }
    if (!std::isfinite(s) || !std::isfinite(c)) throw NumericError("too close to a pole of sm/cm");
    return {s, c};
}

//--- D5 abelian integral ---------------------------------------------------------------------

double d5_W(double x) { return (x - 1) * ((((x - 4) * x - 14) * x - 4) * x + 1); }

namespace {

constexpr double kQuadTol = 1e-14;

std::array<double, 5> d5_roots() {
    std::array<double, 5> r;
    for (int j = 0; j < 5; ++j) r[j] = std::tan(std::numbers::pi / 4 + 2 * std::numbers::pi * j / 5);
    r[0] = 1;
    return r;
}

// roots in increasing order: ξ_1 < ξ_4 < ξ_2 < ξ_0 < ξ_3
const std::array<double, 5>& sorted_roots() {
    static const std::array<double, 5> s = [] {
        auto r = d5_roots();
        std::sort(r.begin(), r.end());
        return r;
    }();
    return s;
}

double abs_W(double t) {
    double p = 1;
    for (double r : sorted_roots()) p *= t - r;
    return std::abs(p);
}

double integrand(double t) { return (t * t + 1) / std::pow(abs_W(t), 0.8); }

// Antiderivative of (t²+1)|t−ξ|^{−4/5}, vanishing at ξ.
double T_root(double xi, double t) {
    double s = t - xi;
    double u = std::abs(s);
    double a = 5 * (xi * xi + 1) * std::pow(u, 0.2), b = (5.0 / 3) * xi * std::pow(u, 1.2),
           c = (5.0 / 11) * std::pow(u, 2.2);
    return s >= 0 ? a + b + c : -(a - b + c);
}

double plain(double a, double b) {
    if (a == b) return 0;
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(integrand, a, b, kQuadTol);
}

// ∫ from the root xi (index in sorted_roots) to x, by parts:
// [T·|R|^{−4/5}] + (4/5)∫ T·|R|^{−4/5}·R′/R with R = 𝒲/(t−ξ)
double from_root(int idx, double x) {
    const auto& rs = sorted_roots();
    double xi = rs[idx];
    if (x == xi) return 0;
    auto absR = [&](double t) {
        double p = 1;
        for (int i = 0; i < 5; ++i)
            if (i != idx) p *= t - rs[i];
        return std::abs(p);
    };
    auto dlogR = [&](double t) {
        double s = 0;
        for (int i = 0; i < 5; ++i)
            if (i != idx) s += 1 / (t - rs[i]);
        return s;
    };
    auto rem = [&](double t) { return T_root(xi, t) * std::pow(absR(t), -0.8) * dlogR(t); };
    boost::math::quadrature::tanh_sinh<double> integ;
    double lo = std::min(xi, x), hi = std::max(xi, x);
    double r = 0.8 * integ.integrate(rem, lo, hi, kQuadTol);
    if (x < xi) r = -r;
    return T_root(xi, x) * std::pow(absR(x), -0.8) + r;
}

double tail_plus(double a) {  // ∫_a^∞, a beyond the largest root
    boost::math::quadrature::exp_sinh<double> integ;
    return integ.integrate(integrand, a, std::numeric_limits<double>::infinity(), kQuadTol);
}

double tail_minus(double a) {  // ∫_{−∞}^a, a below the smallest root
    boost::math::quadrature::exp_sinh<double> integ;
    return integ.integrate([](double t) { return integrand(-t); }, -a, std::numeric_limits<double>::infinity(),
                           kQuadTol);
}

// Signed position of x measured from the smallest root along the real line.
struct Positions {
    std::array<double, 4> arcs;  // between consecutive sorted roots
    double right_tail;           // ∫_{ξ_max}^{∞}
    double left_tail;            // ∫_{−∞}^{ξ_min}
};

const Positions& positions() {
    static const Positions p = [] {
        Positions q{};
        const auto& rs = sorted_roots();
        for (int i = 0; i < 4; ++i) {
            double mid = (rs[i] + rs[i + 1]) / 2;
            q.arcs[i] = from_root(i, mid) - from_root(i + 1, mid);
        }
        q.right_tail = from_root(4, rs[4] + 1) + tail_plus(rs[4] + 1);
        q.left_tail = -from_root(0, rs[0] - 1) + tail_minus(rs[0] - 1);
        return q;
    }();
    return p;
}

// ∫_{ξ_min}^{x}; x may be any real or ±∞.
double cumulative(double x) {
    const auto& rs = sorted_roots();
    const Positions& P = positions();
    if (x == rs[0]) return 0;
    if (x < rs[0]) {
        if (std::isinf(x)) return -P.left_tail;
        if (x < rs[0] - 1) return -(-from_root(0, rs[0] - 1) + tail_minus(rs[0] - 1) - tail_minus(x));
        return from_root(0, x);
    }
    double acc = 0;
    for (int i = 0; i < 4; ++i) {
        if (x <= rs[i + 1]) {
            double mid = (rs[i] + rs[i + 1]) / 2;
            return acc + (x <= mid ? from_root(i, x) : P.arcs[i] + from_root(i + 1, x));
        }
        acc += P.arcs[i];
    }
    if (std::isinf(x)) return acc + P.right_tail;
    if (x > rs[4] + 1) return acc + from_root(4, rs[4] + 1) + plain(rs[4] + 1, x);
    return acc + from_root(4, x);
}

}  // namespace

const D5Context& d5_context() {
    static const D5Context ctx = [] {
        D5Context c;
        c.xi = d5_roots();
        const Positions& P = positions();
        double total = P.left_tail + P.right_tail;
        for (double a : P.arcs) total += a;
        c.Omega = total / 5;
        // circle order from ξ_0 = 1 upward: [1,ξ3], [ξ3,∞)∪(−∞,ξ1], [ξ1,ξ4], [ξ4,ξ2], [ξ2,1]
        c.arcs = {P.arcs[3], P.right_tail + P.left_tail, P.arcs[0], P.arcs[1], P.arcs[2]};
        c.Xi = cumulative(std::numeric_limits<double>::infinity()) - cumulative(1.0);
        return c;
    }();
    return ctx;
}

double d5_integral(double a, double b) { return cumulative(b) - cumulative(a); }

double d5_alpha(double x) {
    if (!std::isfinite(x)) throw DomainError("α needs a finite argument");
    double five = 5 * d5_context().Omega;
    double a = d5_integral(1.0, x);
    double r = std::remainder(a, five);
    if (r >= five / 2) r -= five;
    return r;
}

std::optional<double> d5_mobius(int j, double x) {
    double k = 2 * std::numbers::pi * j / 5;
    double den = -x * std::sin(k) + std::cos(k);
    double num = x * std::cos(k) + std::sin(k);
    if (den == 0 || std::abs(num / den) > 1e15) return std::nullopt;
    return num / den;
}

std::optional<double> d5_k(double t) {
    const D5Context& ctx = d5_context();
    double O = ctx.Omega;
    double r = std::remainder(t, 5 * O);
    if (r < 0) r += 5 * O;
    // nearest multiple cΩ, c = 2j mod 5
    int c = static_cast<int>(std::lround(r / O)) % 5;
    static constexpr int j_of_c[5] = {0, 3, 1, 4, 2};
    double s = r - c * O;
    if (s > 2.5 * O) s -= 5 * O;
    // k(s) on the principal branch: α(x) = s with x ∈ [−ξ_4, −ξ_1] ⊂ (ξ_2, ξ_3)
    const auto& rs = sorted_roots();
    double lo = rs[2] + 1e-12, hi = rs[4] - 1e-12;
    double x = 1 + s;  // α′(1⁺) is large; start inside and let the bracket guard
    x = std::clamp(x, lo, hi);
    double base = cumulative(1.0);
    for (int it = 0; it < 200; ++it) {
        double f = cumulative(x) - base - s;
        if (f > 0) hi = x;
        else lo = x;
        double d = integrand(x);
        double nx = x - f / d;
        if (!(nx > lo && nx < hi) || !std::isfinite(nx)) nx = (lo + hi) / 2;
        if (std::abs(nx - x) <= 1e-15 * std::max(1.0, std::abs(x)) || hi - lo < 1e-15) {
            x = nx;
            break;
        }
        x = nx;
    }
    return d5_mobius(j_of_c[c], x);
}

}  // namespace superflow

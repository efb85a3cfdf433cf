#include "superflow/hyperoct.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>
#include <gsl/gsl_poly.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "superflow/errors.hpp"
#include "superflow/firstint.hpp"
#include "superflow/parallel.hpp"

namespace superflow {

namespace {

void require_odd(int n) {
    if (n < 3 || n > 7 || n % 2 == 0) throw DomainError("hyperoctahedral field needs odd 3 <= n <= 7");
}

Rat binom(int n, int k) {
    Rat r(1);
    for (int i = 1; i <= k; ++i) r = r * Rat(n - k + i) / Rat(i);
    return r;
}

Rat rat_pow(const Rat& x, int k) {
    Rat r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

MPoly constant(int nv, const Rat& c) { return MPoly(nv, c); }

// Elementary symmetric functions σ_0..σ_n of the given values.
template <class T>
std::vector<T> elementary(std::span<const T> v) {
    std::vector<T> e(v.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * v[i];
    return e;
}

UniPoly trim(UniPoly p) {
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    return p;
}

}  // namespace

//--- the field -------------------------------------------------------------------------

VectorField build_hyperoct_field(int n) {
    require_odd(n);
    std::vector<MPoly> x;
    for (int i = 0; i < n; ++i) x.push_back(MPoly::var(n, i));
    std::vector<MPoly> comps;
    for (int k = 0; k < n; ++k) {
        // variables x_{k+1}, …, x_{k+n−1} cyclically, in this order
        std::vector<int> idx;
        for (int s = 1; s < n; ++s) idx.push_back((k + s) % n);
        MPoly w = constant(n, Rat(1));
        for (int i : idx) w = w * x[i];
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) w = w * (x[idx[a]] * x[idx[a]] - x[idx[b]] * x[idx[b]]);
        comps.push_back(std::move(w));
    }
    return VectorField(std::move(comps));
}

bool power_sum_integrals_check(int n) {
    require_odd(n);
    VectorField v = build_hyperoct_field(n);
    std::vector<MPoly> q;
    for (int s = 1; s <= n; ++s) {
        MPoly w(n);
        for (int j = 0; j < n; ++j) w += MPoly::var(n, j).pow(2 * s);
        q.push_back(std::move(w));
    }
    for (int s = 0; s < n - 1; ++s)
        if (!is_polynomial_first_integral(q[s], v)) return false;
    if (is_polynomial_first_integral(q[n - 1], v)) return false;
    std::vector<Rat> pt;
    for (int j = 0; j < n; ++j) pt.push_back(Rat(j + 2, 2 * j + 3));
    RatMatrix jac(n - 1, n);
    for (int s = 0; s < n - 1; ++s)
        for (int j = 0; j < n; ++j) jac(s, j) = q[s].derivative(j).eval<Rat>(pt);
    return rank(jac) == n - 1;
}

//--- admissibility ---------------------------------------------------------------------

XiVector make_xi(int n, std::vector<Rat> xi, std::vector<double> seed) {
    if (n < 3 || n % 2 == 0) throw DomainError("xi vector needs odd n >= 3");
    if (static_cast<int>(xi.size()) != n - 1) throw DomainError("xi vector needs n - 1 entries");
    if (!seed.empty() && static_cast<int>(seed.size()) != n) throw DomainError("seed point has wrong dimension");
    XiVector out;
    out.n = n;
    out.xi = std::move(xi);
    out.seed = std::move(seed);
    return out;
}

XiVector xi_from_point(std::span<const Rat> x) {
    int n = static_cast<int>(x.size());
    std::vector<Rat> sq;
    std::vector<double> seed;
    for (const auto& v : x) {
        sq.push_back(v * v);
        seed.push_back(to_double(v));
    }
    auto e = elementary<Rat>(sq);
    XiVector out = make_xi(n, std::vector<Rat>(e.begin() + 1, e.end() - 1), std::move(seed));
    return admissibility_check(std::move(out));
}

XiVector admissibility_check(XiVector xi) {
    int n = xi.n;
    std::vector<Rat> E(n);  // E_0..E_{n−1}
    E[0] = 1;
    for (int k = 1; k < n; ++k) E[k] = xi.xi[k - 1] / binom(n, k);
    xi.failures.clear();
    auto fail = [&](std::string name) { xi.failures.push_back(std::move(name)); };
    for (int k = 1; k < n; ++k)
        if (E[k] < 0) fail("nonnegative E" + std::to_string(k));
    // E_k^{1/k} ≥ E_{k+1}^{1/(k+1)}  ⇔  E_k^{k+1} ≥ E_{k+1}^k for nonnegative E
    for (int k = 1; k + 1 < n; ++k)
        if (E[k] >= 0 && E[k + 1] >= 0 && rat_pow(E[k], k + 1) < rat_pow(E[k + 1], k))
            fail("power mean chain k=" + std::to_string(k));
    for (int k = 1; k + 1 < n; ++k)
        if (E[k] * E[k] < E[k - 1] * E[k + 1]) fail("newton-maclaurin k=" + std::to_string(k));
    for (int k = 0; k + 3 < n; ++k) {
        Rat lhs = 4 * (E[k + 1] * E[k + 3] - E[k + 2] * E[k + 2]) * (E[k] * E[k + 2] - E[k + 1] * E[k + 1]);
        Rat d = E[k + 1] * E[k + 2] - E[k] * E[k + 3];
        if (lhs < d * d) fail("rosset k=" + std::to_string(k));
    }
    xi.admissible = xi.failures.empty();
    return xi;
}

//--- univariate polynomials -------------------------------------------------------------

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::eval(double x) const {
    double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

UniPoly UniPoly::derivative() const {
    UniPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
    return d;
}

std::string to_string(const UniPoly& p, const std::string& var) {
    MPoly m(1);
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        Monomial mono;
        mono.e[0] = static_cast<int32_t>(i);
        m.add_term(mono, p.c[i]);
    }
    std::vector<std::string> names{var};
    return to_string(m, names);
}

UniPoly to_unipoly(const MPoly& p, int var) {
    UniPoly out;
    for (const auto& [m, c] : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i)
            if (i != var && m.e[i] != 0) throw DomainError("polynomial involves more than one variable");
        std::size_t k = static_cast<std::size_t>(m.e[var]);
        if (out.c.size() <= k) out.c.resize(k + 1, Rat(0));
        out.c[k] = c;
    }
    return out;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.c.empty()) {
        // a mod b
        while (a.degree() >= b.degree() && !a.c.empty()) {
            Rat f = a.c.back() / b.c.back();
            int shift = a.degree() - b.degree();
            for (int i = 0; i <= b.degree(); ++i) a.c[i + shift] -= f * b.c[i];
            a = trim(std::move(a));
        }
        std::swap(a, b);
    }
    if (!a.c.empty()) {
        Rat lead = a.c.back();
        for (auto& v : a.c) v /= lead;
    }
    return a;
}

MPoly resultant(const std::vector<MPoly>& f, const std::vector<MPoly>& g) {
    int m = static_cast<int>(f.size()) - 1, k = static_cast<int>(g.size()) - 1;
    if (m < 1 || k < 0 || f.back().is_zero() || g.back().is_zero())
        throw DomainError("resultant needs nonzero leading coefficients");
    int nv = 0;
    for (const auto& c : f) nv = std::max(nv, c.nvars());
    for (const auto& c : g) nv = std::max(nv, c.nvars());
    int size = m + k;
    std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size, MPoly(nv)));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i].extended(nv);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= k; ++i) s[k + r][r + i] = g[k - i].extended(nv);
    return bareiss_determinant(std::move(s));
}

MPoly discriminant(const std::vector<MPoly>& f) {
    int m = static_cast<int>(f.size()) - 1;
    if (m < 1) throw DomainError("discriminant needs degree >= 1");
    if (!f.back().is_constant() || f.back().is_zero())
        throw DomainError("discriminant needs a nonzero constant leading coefficient");
    std::vector<MPoly> df;
    for (int i = 1; i <= m; ++i) df.push_back(f[i] * Rat(i));
    MPoly r = resultant(f, df);
    Rat scale = Rat((m * (m - 1) / 2) % 2 ? -1 : 1) / f.back().constant_term();
    return r * scale;
}

bool weighted_homogeneous(const MPoly& p, std::span<const int> weights, int weight) {
    for (const auto& [m, c] : p.terms()) {
        int w = 0;
        for (int i = 0; i < p.nvars(); ++i) w += weights[i] * m.e[i];
        if (w != weight) return false;
    }
    return true;
}

//--- discriminant reduction ---------------------------------------------------------------

UniPoly h_polynomial(const XiVector& xi) {
    int n = xi.n;
    UniPoly h;
    h.c.assign(n + 1, Rat(0));
    h.c[n] = 1;
    for (int s = 1; s < n; ++s) h.c[n - s] = (s % 2 ? -1 : 1) * xi.xi[s - 1];
    return h;
}

namespace {

// 4𝔵·discrim_Z(H(Z) − 𝔵) with the coefficients of H given as polynomials and 𝔵 = variable xv.
MPoly reduce(const std::vector<MPoly>& hcoef, int nv, int xv) {
    std::vector<MPoly> f = hcoef;
    MPoly x = MPoly::var(nv, xv);
    f[0] = f[0] - x;
    return x * discriminant(f) * Rat(4);
}

}  // namespace

MPoly discriminant_reduction_symbolic(int n) {
    require_odd(n);
    int nv = n;
    std::vector<MPoly> h(n + 1, MPoly(nv));
    h[n] = constant(nv, Rat(1));
    for (int s = 1; s < n; ++s) h[n - s] = MPoly::var(nv, s - 1) * Rat(s % 2 ? -1 : 1);
    return reduce(h, nv, n - 1);
}

UniPoly discriminant_reduction(const XiVector& xi) {
    require_odd(xi.n);
    UniPoly h = h_polynomial(xi);
    std::vector<MPoly> coef;
    for (const auto& c : h.c) coef.push_back(constant(1, c));
    UniPoly d = to_unipoly(reduce(coef, 1, 0), 0);
    if (d.degree() != xi.n) throw DomainError("degenerate leading coefficient of the reduced polynomial");
    return d;
}

MPoly d3_octahedral_chart() {
    // variables (ξ, Υ); 𝒟_3 in (ξ_1, ξ_2, 𝔵)
    MPoly d = discriminant_reduction_symbolic(3);
    MPoly xi = MPoly::var(2, 0), ups = MPoly::var(2, 1);
    std::vector<MPoly> images{constant(2, Rat(1)), (constant(2, Rat(1)) - xi) * Rat(1, 2), ups * Rat(-1, 27)};
    return substitute(d, images) * Rat(729);
}

MPoly d5_printed_form() {
    static const char* text =
        "12500*x^5"
        " + x^4*(8000*a^2*c - 6400*a^3*b + 1024*a^5 + 9000*a*b^2 - 10000*a*d - 15000*b*c)"
        " + x^3*(432*b^5 + 4080*a^2*b^2*d + 2240*a^2*b*c^2 - 8200*a*b*c*d - 3600*b^3*d + 3300*b^2*c^2"
        " - 512*a^4*c^2 - 768*a^4*b*d + 640*a^3*c*d - 200*a^2*d^2 + 9000*c^2*d - 3600*a*c^3"
        " + 8000*b*d^2 - 2520*a*b^3*c + 576*a^3*b^2*c - 108*a^2*b^4)"
        " + x^2*(2984*a^2*b*c*d^2 + 96*a^2*c^3*d + 64*b^3*c^3 + 64*a^3*c^4 - 144*a^3*d^3"
        " + 96*a*b^3*d^2 + 576*a^4*c*d^2 + 4080*a*c^2*d^2 - 2520*b*c^3*d + 2240*b^2*c*d^2"
        " + 432*c^5 + 1424*a*b^2*c^2*d - 320*a^3*b*c^2*d - 288*a*b*c^4 + 72*a^2*b^3*c*d"
        " - 288*b^4*c*d - 16*a^2*b^2*c^3 + 640*a*b*d^3 - 6400*c*d^3 - 24*a^3*b^2*d^2)"
        " + x*(1024*d^5 + 72*a^3*b*c*d^3 - 320*a*b^2*c*d^3 + 72*a*b*c^3*d^2"
        " - 16*a^3*c^3*d^2 - 108*c^4*d^2 - 108*a^4*d^4 + 576*b*c^2*d^3"
        " - 512*b^2*d^4 + 64*b^4*d^3 + 4*a^2*b^2*c^2*d^2 - 16*b^3*c^2*d^2"
        " - 768*a*c*d^4 + 576*a^2*b*d^4 - 24*a^2*c^2*d^3 - 16*a^2*b^3*d^3)";
    return parse_poly(text, {"a", "b", "c", "d", "x"});
}

std::vector<CoefficientMismatch> coefficient_mismatches(const MPoly& computed, const MPoly& reference) {
    std::vector<CoefficientMismatch> out;
    MPoly diff = computed - reference;
    for (const auto& [m, c] : diff.terms()) out.push_back({m, computed.coeff(m), reference.coeff(m)});
    return out;
}

//--- singular orbit ----------------------------------------------------------------------

namespace {

// 𝒟_5 at the ξ's of (1, 1, 1, 2, q), in the variables (q, 𝔵).
MPoly d5_along_q() {
    MPoly d = discriminant_reduction_symbolic(5);
    MPoly q2 = MPoly::var(2, 0).pow(2);
    MPoly one = constant(2, Rat(1));
    std::vector<MPoly> images{one * Rat(7) + q2, one * Rat(15) + q2 * Rat(7), one * Rat(13) + q2 * Rat(15),
                              one * Rat(4) + q2 * Rat(13), MPoly::var(2, 1)};
    return substitute(d, images);
}

MPoly residual_cubic_q() {
    MPoly x = MPoly::var(2, 1), q2 = MPoly::var(2, 0).pow(2);
    MPoly f = x - q2 * Rat(4);
    return divide_exact(d5_along_q(), f * f);
}

}  // namespace

SingularFactorReport singular_factor_check(const Rat& q) {
    if (q == 0) throw DomainError("singular orbit needs q != 0");
    SingularFactorReport r;
    r.q = q;
    std::vector<Rat> pt{Rat(1), Rat(1), Rat(1), Rat(2), q};
    r.d5 = discriminant_reduction(xi_from_point(pt));
    Rat root = 4 * q * q;
    // divide by (𝔵 − root)² by synthetic division, tracking remainders
    UniPoly cur = r.d5;
    auto divide_linear = [](const UniPoly& p, const Rat& a, Rat& rem) {
        UniPoly quo;
        quo.c.assign(p.c.size() - 1, Rat(0));
        Rat acc(0);
        for (int i = p.degree(); i >= 1; --i) {
            acc = acc * a + p.c[i];
            quo.c[i - 1] = acc;
        }
        rem = acc * a + p.c[0];
        return quo;
    };
    Rat rem1, rem2;
    cur = divide_linear(cur, root, rem1);
    cur = divide_linear(cur, root, rem2);
    r.has_double_factor = rem1 == 0 && rem2 == 0;
    r.cubic = cur;
    r.cubic_shares_root = r.cubic.eval(root) == 0;
    std::vector<MPoly> coef;
    for (const auto& c : r.cubic.c) coef.push_back(constant(1, c));
    r.cubic_discriminant = discriminant(coef).constant_term();
    r.cubic_repeated_root = r.cubic_discriminant == 0;
    return r;
}

MPoly singular_cubic_discriminant() {
    MPoly cubic = residual_cubic_q();
    std::vector<MPoly> coef(4, MPoly(1));
    for (const auto& [m, c] : cubic.terms()) {
        Monomial qm;
        qm.e[0] = m.e[0];
        coef[m.e[1]].add_term(qm, c);
    }
    if (!coef[3].is_constant()) throw DomainError("residual cubic has a non-constant leading coefficient");
    return discriminant(coef);
}

//--- genus 2 to elliptic -----------------------------------------------------------------

Genus2Report genus2_reduction_check() {
    // variables (a, b, X)
    const int nv = 3;
    MPoly a = MPoly::var(nv, 0), b = MPoly::var(nv, 1), X = MPoly::var(nv, 2);
    MPoly f = X * Rat(2) * (a + b * X + X * X * Rat(2)) * (b * b * Rat(1, 4) - a * Rat(2) - b * X - X * X * Rat(3));
    MPoly psi = X.pow(3) * Rat(-27) - b * X * X * Rat(27, 2) - a * X * Rat(27, 2);
    MPoly wp = psi + b.pow(3) * Rat(1, 6) - a * b * Rat(3, 2);
    MPoly g2 = b.pow(6) * Rat(1, 3) - a * b.pow(4) * Rat(6) + a * a * b * b * Rat(135, 4) - a.pow(3) * Rat(54);
    MPoly g3 = b.pow(9) * Rat(-1, 27) + a * b.pow(7) - a * a * b.pow(5) * Rat(81, 8) + a.pow(3) * b.pow(3) * Rat(369, 8) -
               a.pow(4) * b * Rat(81);
    Genus2Report r;
    MPoly dpsi = psi.derivative(2);
    r.weierstrass_identity = (dpsi * dpsi * f - (wp.pow(3) * Rat(4) - g2 * wp - g3)).is_zero();
    MPoly b2 = b * b;
    r.modular_discriminant = (g2.pow(3) - g3 * g3 * Rat(27) -
                              a.pow(4) * (b2 - a * Rat(8)).pow(2) * (b2 - a * Rat(6)).pow(3) * Rat(729, 64))
                                 .is_zero();
    std::vector<MPoly> fc(6, MPoly(nv));
    for (const auto& [m, c] : f.terms()) {
        Monomial ab = m;
        ab.e[2] = 0;
        fc[m.e[2]].add_term(ab, c / 2);
    }
    r.curve_discriminant =
        (discriminant(fc) - a.pow(6) * (b2 - a * Rat(8)).pow(3) * (b2 - a * Rat(6)) * Rat(1, 4)).is_zero();
    // a = 1 − ξ, b = −2 with ψ as the free variable: variables (ξ, ψ)
    MPoly xi = MPoly::var(2, 0), ps = MPoly::var(2, 1), one2 = constant(2, Rat(1));
    std::vector<MPoly> images{one2 - xi, one2 * Rat(-2), MPoly(2)};
    MPoly g2s = substitute(g2, images), g3s = substitute(g3, images);
    MPoly shift = substitute(b.pow(3) * Rat(1, 6) - a * b * Rat(3, 2), images);
    MPoly w = ps + shift;
    MPoly lhs = w.pow(3) * Rat(4) - g2s * w - g3s;
    MPoly rhs = ps.pow(3) * Rat(4) + (one2 * Rat(20) - xi * Rat(36)) * ps * ps -
                (xi * Rat(2) - one2) * (xi - one2).pow(2) * ps * Rat(27);
    r.octahedral_specialization = (lhs - rhs).is_zero();
    return r;
}

//--- numerical triple reduction -------------------------------------------------------------

double ReductionRun::max_level() const {
    return level_residual.empty() ? 0 : *std::max_element(level_residual.begin(), level_residual.end());
}
double ReductionRun::max_motion() const {
    return motion_residual.empty() ? 0 : *std::max_element(motion_residual.begin(), motion_residual.end());
}
double ReductionRun::max_integral() const {
    return integral_residual.empty() ? 0 : *std::max_element(integral_residual.begin(), integral_residual.end());
}

namespace {

[[maybe_unused]] const bool gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
}();

struct DoubleField {
    std::vector<MPoly> comps;
    std::vector<double> operator()(const std::vector<double>& x) const {
        std::vector<double> out;
        for (const auto& c : comps) out.push_back(c.eval<double>(x));
        return out;
    }
};

// Real roots of H(X) = level, ascending; near-real conjugate pairs are taken as double roots.
std::vector<double> level_roots(const UniPoly& h, double level) {
    int n = h.degree();
    std::vector<double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = to_double(h.c[i]);
    a[0] -= level;
    std::vector<double> z(2 * n);
    gsl_poly_complex_workspace* ws = gsl_poly_complex_workspace_alloc(n + 1);
    int status = gsl_poly_complex_solve(a.data(), n + 1, ws, z.data());
    gsl_poly_complex_workspace_free(ws);
    if (status != GSL_SUCCESS) throw NumericError("root solve of H(X) = level did not converge");
    double scale = 1;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::hypot(z[2 * i], z[2 * i + 1]));
    std::vector<double> roots;
    UniPoly dh = h.derivative();
    for (int i = 0; i < n; ++i) {
        if (std::abs(z[2 * i + 1]) > 1e-5 * scale) throw NumericError("H(X) = level has non-real roots: orbit not real");
        double x = z[2 * i];
        for (int it = 0; it < 3; ++it) {
            double d = dh.eval(x);
            if (std::abs(d) < 1e-8 * scale) break;
            double step = (h.eval(x) - level) / d;
            if (std::abs(step) > 1e-6 * scale) break;
            x -= step;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> real_roots(const UniPoly& g) {
    int n = g.degree();
    std::vector<double> a(n + 1), z(2 * n);
    for (int i = 0; i <= n; ++i) a[i] = to_double(g.c[i]);
    gsl_poly_complex_workspace* ws = gsl_poly_complex_workspace_alloc(n + 1);
    int status = gsl_poly_complex_solve(a.data(), n + 1, ws, z.data());
    gsl_poly_complex_workspace_free(ws);
    if (status != GSL_SUCCESS) throw NumericError("root solve did not converge");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        if (std::abs(z[2 * i + 1]) <= 1e-9 * std::max(1.0, std::abs(z[2 * i]))) out.push_back(z[2 * i]);
    return out;
}

std::vector<double> rk4_step(const DoubleField& f, const std::vector<double>& x, double h) {
    auto axpy = [](const std::vector<double>& u, const std::vector<double>& v, double s) {
        std::vector<double> r(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] + s * v[i];
        return r;
    };
    auto k1 = f(x), k2 = f(axpy(x, k1, h / 2)), k3 = f(axpy(x, k2, h / 2)), k4 = f(axpy(x, k3, h));
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return r;
}

struct UpsilonSystem {
    UniPoly dD;
};

int upsilon_rhs(double, const double y[], double dy[], void* params) {
    const auto* s = static_cast<const UpsilonSystem*>(params);
    dy[0] = y[1];
    dy[1] = 0.5 * s->dD.eval(y[0]);
    return GSL_SUCCESS;
}

double upsilon_rate(const std::vector<double>& p, const std::vector<double>& w) {
    // d/dt Π p_j² = Σ_j 2p_jϖ_j Π_{k≠j} p_k²
    double s = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        double term = 2 * p[j] * w[j];
        for (std::size_t k = 0; k < p.size(); ++k)
            if (k != j) term *= p[k] * p[k];
        s += term;
    }
    return s;
}

void check_collisions(const std::vector<double>& roots, double t) {
    double scale = 1;
    for (double r : roots) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < 1e-9 * scale)
            throw NumericError("root collision of H(X) = level at t = " + std::to_string(t));
}

}  // namespace

std::vector<double> point_from_level(const XiVector& xi, double xfrak, int direction) {
    UniPoly h = h_polynomial(xi);
    auto roots = level_roots(h, xfrak);
    std::vector<double> x;
    for (double r : roots) {
        if (r < -1e-12) throw DomainError("level has a negative root: no real point");
        x.push_back(std::sqrt(std::max(r, 0.0)));
    }
    DoubleField f{build_hyperoct_field(xi.n).polynomial_components()};
    double rate = upsilon_rate(x, f(x));
    if ((rate > 0 ? 1 : -1) != (direction >= 0 ? 1 : -1)) x[0] = -x[0];
    return x;
}

ReductionRun triple_reduction_integrate(const XiVector& xi_in, double t_end, double rtol, int samples) {
    XiVector xi = admissibility_check(xi_in);
    int n = xi.n;
    require_odd(n);
    if (!xi.admissible) throw DomainError("xi vector is not admissible: " + xi.failures.front());
    if (xi.seed.empty()) throw DomainError("triple reduction needs a seed point");
    if (samples < 2 || !(t_end > 0)) throw DomainError("triple reduction needs t_end > 0 and >= 2 samples");
    DoubleField field{build_hyperoct_field(n).polynomial_components()};

    ReductionRun run;
    run.n = n;
    run.xi = xi;
    run.D = discriminant_reduction(xi);
    UniPoly h = h_polynomial(xi), dh = h.derivative(), dD = run.D.derivative();

    std::vector<double> p0 = xi.seed, P0;
    for (double v : p0) P0.push_back(v * v);
    {
        std::vector<double> s = P0;
        std::sort(s.begin(), s.end());
        check_collisions(s, 0);
    }
    double ups0 = 1, rate0 = upsilon_rate(p0, field(p0));
    for (double v : P0) ups0 *= v;
    double dval = run.D.eval(ups0);
    if (std::abs(rate0 * rate0 - dval) > 1e-8 * std::max(1.0, std::abs(dval)))
        throw DomainError("seed point does not lie on the curve of the reduced polynomial");

    // repeated roots of 𝒟_n
    UniPoly g = uni_gcd(run.D, dD);
    std::vector<double> repeated;
    if (g.degree() >= 1) repeated = real_roots(g);

    // Υ trace
    UpsilonSystem sys{dD};
    gsl_odeiv2_system ode{upsilon_rhs, nullptr, 2, &sys};
    double atol = rtol * 1e-2 * std::max(1.0, std::abs(ups0));
    gsl_odeiv2_driver* drv = gsl_odeiv2_driver_alloc_y_new(&ode, gsl_odeiv2_step_rk8pd, 1e-4, atol, rtol);
    double y[2] = {ups0, rate0}, tcur = 0;
    for (int k = 0; k < samples; ++k) {
        double tk = t_end * k / (samples - 1);
        if (k > 0) {
            int status = gsl_odeiv2_driver_apply(drv, &tcur, tk, y);
            if (status != GSL_SUCCESS) {
                gsl_odeiv2_driver_free(drv);
                throw NumericError("integration of the reduced equation failed");
            }
        }
        run.t.push_back(tk);
        run.upsilon.push_back(y[0]);
        run.upsilon_prime.push_back(y[1]);
    }
    gsl_odeiv2_driver_free(drv);

    double lo = *std::min_element(run.upsilon.begin(), run.upsilon.end());
    double hi = *std::max_element(run.upsilon.begin(), run.upsilon.end());
    double span = std::max({1.0, std::abs(lo), std::abs(hi)});
    for (double r : repeated)
        if (r > lo - 1e-9 * span && r < hi + 1e-9 * span && (hi - lo) > 1e-12 * span)
            throw DomainError("reduced polynomial has a repeated root on the traversed range");

    for (int k = 0; k < samples; ++k) {
        double e = std::abs(run.upsilon_prime[k] * run.upsilon_prime[k] - run.D.eval(run.upsilon[k]));
        run.energy_drift = std::max(run.energy_drift, e / std::max(1.0, run.upsilon_prime[k] * run.upsilon_prime[k]));
        if (k > 0 && (run.upsilon_prime[k] > 0) != (run.upsilon_prime[k - 1] > 0)) ++run.turning_points;
    }

    // roots per sample, independent of each other
    std::vector<std::vector<double>> roots(samples);
    parallel_for(samples, [&](std::size_t k) { roots[k] = level_roots(h, run.upsilon[k]); });

    // pair roots with coordinates along the flow
    run.P.assign(samples, {});
    run.p.assign(samples, {});
    std::vector<double> cur = p0;
    for (int k = 0; k < samples; ++k) {
        std::vector<double> pred = k == 0 ? cur : rk4_step(field, cur, run.t[k] - run.t[k - 1]);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) { return pred[i] * pred[i] < pred[j] * pred[j]; });
        check_collisions(roots[k], run.t[k]);
        std::vector<double> P(n), p(n);
        for (int r = 0; r < n; ++r) {
            int j = order[r];
            P[j] = roots[k][r];
            double mag = std::sqrt(std::max(P[j], 0.0));
            p[j] = pred[j] >= 0 ? mag : -mag;
        }
        run.P[k] = P;
        run.p[k] = p;
        cur = p;

        double lev = 0, mot = 0, integ = 0;
        for (int j = 0; j < n; ++j) lev = std::max(lev, std::abs(h.eval(P[j]) - run.upsilon[k]));
        auto w = field(p);
        double up = run.upsilon_prime[k];
        for (int j = 0; j < n; ++j)
            mot = std::max(mot, std::abs(up - 2 * p[j] * w[j] * dh.eval(P[j])) / std::max(1.0, std::abs(up)));
        auto e = elementary<double>(P);
        for (int l = 1; l < n; ++l) {
            double ref = to_double(xi.xi[l - 1]);
            integ = std::max(integ, std::abs(e[l] - ref) / std::max(1.0, std::abs(ref)));
        }
        run.level_residual.push_back(lev);
        run.motion_residual.push_back(mot);
        run.integral_residual.push_back(integ);
    }
    return run;
}

void write_csv(std::ostream& os, const ReductionRun& run) {
    os << "t,upsilon,upsilon_prime";
    for (int j = 1; j <= run.n; ++j) os << ",P" << j;
    for (int j = 1; j <= run.n; ++j) os << ",p" << j;
    os << ",level_residual,motion_residual,integral_residual\n";
    os.precision(17);
    for (std::size_t k = 0; k < run.t.size(); ++k) {
        os << run.t[k] << ',' << run.upsilon[k] << ',' << run.upsilon_prime[k];
        for (double v : run.P[k]) os << ',' << v;
        for (double v : run.p[k]) os << ',' << v;
        os << ',' << run.level_residual[k] << ',' << run.motion_residual[k] << ',' << run.integral_residual[k] << '\n';
    }
}

}  // namespace superflow

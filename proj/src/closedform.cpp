#include "superflow/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "superflow/elliptic.hpp"
#include "superflow/errors.hpp"
#include "superflow/flows.hpp"

namespace superflow {

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXY{"x", "y"};

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

cplx principal_cbrt(cplx z) { return z == cplx(0) ? cplx(0) : std::pow(z, 1.0 / 3); }

void record(ClosedFormContext* ctx, const std::string& radical, cplx arg, cplx value) {
    if (ctx) ctx->branches.push_back({radical, arg, value});
}

void check_cbrt_branch(cplx r) {
    if (std::abs(std::arg(r)) > std::numbers::pi / 3 + 1e-15) throw NumericError("cube root left |arg| <= π/3");
}

}  // namespace

//--- fields --------------------------------------------------------------------------

VectorField tetra_field() {
    return VectorField({parse_poly("y*z", kXYZ), parse_poly("x*z", kXYZ), parse_poly("x*y", kXYZ)});
}

VectorField octa_field() {
    return VectorField({parse_poly("y^3*z - y*z^3", kXYZ), parse_poly("z^3*x - z*x^3", kXYZ),
                        parse_poly("x^3*y - x*y^3", kXYZ)},
                       parse_poly("x^2 + y^2 + z^2", kXYZ));
}

VectorField dixon_field() { return VectorField({parse_poly("x^2 - 2*x*y", kXY), parse_poly("y^2 - 2*x*y", kXY)}); }

VectorField d5_field() {
    return VectorField({parse_poly("x^4 + 4*x^3*y - 6*x^2*y^2 - 4*x*y^3 + y^4", kXY),
                        parse_poly("x^4 - 4*x^3*y - 6*x^2*y^2 + 4*x*y^3 + y^4", kXY)},
                       parse_poly("x^2 + y^2", kXY));
}

VectorField named_field(const std::string& id) {
    if (id == "tetra") return tetra_field();
    if (id == "octa") return octa_field();
    if (id == "dixon") return dixon_field();
    if (id == "d5") return d5_field();
    throw DomainError("unknown field '" + id + "' (tetra | octa | dixon | d5)");
}

//--- tetrahedral ---------------------------------------------------------------------

double tetra_U(double x, double y, double z, ClosedFormContext* ctx) {
    double x2 = x * x, y2 = y * y, z2 = z * z;
    if (ctx) {
        ctx->theorem = "thm-s4";
        ctx->inputs = {x, y, z};
    }
    double w, num, den;
    if (z == x && x2 > y2) {
        w = std::sqrt(x2 - y2);
        num = x * (x2 - y2) * std::cos(w) + x * y * w * std::sin(w);
        den = x2 * std::pow(std::cos(w), 2) - y2;
        if (ctx) ctx->modulus = 0.0;
    } else if (x2 > z2 && z2 > y2) {
        w = std::sqrt(x2 - y2);
        double k = std::sqrt((x2 - z2) / (x2 - y2));
        JacobiTriple j = jacobi_snckdn(w, k);
        num = x * w * w * j.cn * j.dn + y * z * w * j.sn;
        den = w * w - x2 * j.sn * j.sn;
        if (ctx) ctx->modulus = k;
    } else {
        throw DomainError("tetrahedral closed form needs x² > z² > y², or z = x with x² > y²");
    }
    if (ctx) ctx->varsigma = w;
    if (den == 0) throw NumericError("tetrahedral closed form at a pole");
    return num / den;
}

//--- Dixonian ------------------------------------------------------------------------

std::pair<double, double> lambda_dixon(double x, double y, ClosedFormContext* ctx) {
    if (!(x > 0 && x / 3 < y && y < 3 * x)) throw DomainError("Dixonian closed form needs 0 < x/3 < y < 3x");
    double arg = x * y * (x - y);
    double v = std::cbrt(arg);
    if (ctx) {
        ctx->theorem = "thm2";
        ctx->inputs = {x, y};
        ctx->varsigma = v;
        ctx->branches.push_back({"cbrt(xy(x-y)) real", arg, v});
    }
    auto [s, c] = dixon_smcm(v);
    double a = c * v * v - s * c * c * y * v + s * s * x * y;
    double b = c * c * v * v - s * x * v + s * s * c * x * y;
    double d = (x - y) + s * s * s * y;  // x − cm³y with sm³ + cm³ = 1
    if (v == 0) return {x, y};
    if (a == 0 || b == 0 || d == 0) throw NumericError("Dixonian closed form at a pole");
    return {v * a * a / (y * d * b), v * b * b / (x * d * a)};
}

//--- octahedral, singular orbit ---------------------------------------------------------

cplx octa_J_singular(double x, double y, double z) {
    double s2 = x * x + y * y + z * z, s = std::sqrt(s2), s3 = s2 * s;
    cplx c = std::pow(cplx(kSqrt3 * x, y - z), 3);
    double th = std::tanh(s / (2 * kSqrt2));
    const cplx I(0, 1);
    return (c - 2 * kSqrt2 * I * s3 * th) / (2 * kSqrt2 * s3 + I * c * th);
}

double octa_V_singular(double x, double y, double z, ClosedFormContext* ctx) {
    if (x < 0 || y < 0 || z < 0) throw DomainError("singular orbit needs x, y, z >= 0");
    double s2 = x * x + y * y + z * z;
    if (s2 == 0) return 0;
    double q = x * x * x * x + y * y * y * y + z * z * z * z;
    if (!rel_close(x, y + z, 1e-12) || !rel_close(s2 * s2 / q, 2, 1e-12))
        throw DomainError("point is not on the level-2 orbit x = y + z");
    cplx J = octa_J_singular(x, y, z);
    if (std::abs(std::abs(J) - 1) > 1e-12) throw NumericError("|J| = 1 violated");
    cplx r = principal_cbrt(J);
    check_cbrt_branch(r);
    double s = std::sqrt(s2);
    if (ctx) {
        ctx->theorem = "thm-spec";
        ctx->inputs = {x, y, z};
        ctx->varsigma = s;
        ctx->level = s2 * s2 / q;
        ctx->J = J;
        record(ctx, "J^(1/3)", J, r);
    }
    return (r + 1.0 / r).real() * s / std::sqrt(6.0);
}

//--- octahedral, generic orbit ------------------------------------------------------------

namespace {

// x² − 2(y²+z²) vanishes on the branch boundary of the generic orbit, where √L has a
// square-root branch point; rounding-level values are snapped to zero there.
double boundary_factor(double x2, double r) {
    double f = x2 - 2 * r;
    return std::abs(f) <= 64 * std::numeric_limits<double>::epsilon() * (x2 + r) ? 0.0 : f;
}

}  // namespace

double octa_K(double x, double y, double z) {
    double x2 = x * x, r = y * y + z * z, s2 = x2 + r;
    return -3 * x2 * (2 * x2 - r) * boundary_factor(x2, r) / (s2 * s2 * s2);
}

double octa_L(double x, double y, double z) {
    double x2 = x * x, r = y * y + z * z, s2 = x2 + r;
    double a = (r + 10 * x2) * (r + 10 * x2) - 108 * x2 * x2;
    double b = (2 * r - 7 * x2) * (2 * r - 7 * x2) - 27 * x2 * x2;
    return x2 * (2 * x2 - r) * boundary_factor(x2, r) * a * b * b / (9 * std::pow(s2, 9));
}

double octa_V_generic(double x, double y, double z, ClosedFormContext* ctx) {
    if (x < 0 || y < 0 || z < 0 || y < z) throw DomainError("generic orbit needs x, y, z >= 0 and y >= z");
    double s2 = x * x + y * y + z * z;
    if (s2 == 0) return 0;
    double q = x * x * x * x + y * y * y * y + z * z * z * z;
    if (!rel_close(s2 * s2 / q, 9.0 / 5, 1e-12)) throw DomainError("point is not on the level 9/5 orbit");
    if (x * x < (2.0 / 3) * s2 * (1 - 1e-12)) throw DomainError("point is not on the branch x² >= (2/3)(x²+y²+z²)");
    double s = std::sqrt(s2);
    double K = octa_K(x, y, z), L = octa_L(x, y, z);
    if (L < -1e-12) throw NumericError("L is negative on the orbit");
    WpValue wp = weierstrass_p(cplx(s, 0));
    double p = wp.p.real(), dp = wp.dp.real();
    if (std::abs(K - p) < 1e-14) throw NumericError("degenerate addition denominator");
    double ratio = (std::sqrt(std::max(L, 0.0)) + dp) / (K - p);
    double T = ratio * ratio / 4 - K - p;
    double rad = 12 - 81 * T * T;
    if (rad < -1e-9) throw NumericError("T left the range 81T² <= 12");
    cplx J(-108 * T, 12 * std::sqrt(std::max(rad, 0.0)));
    double modulus = 24 * kSqrt3;
    if (std::abs(std::abs(J) - modulus) > 1e-12 * modulus) throw NumericError("|J| = 24√3 violated");
    cplx r = principal_cbrt(J);
    check_cbrt_branch(r);
    double P = (r / 18.0 + 2.0 / (3.0 * r)).real() + 1.0 / 3;
    if (ctx) {
        ctx->theorem = "thm4";
        ctx->inputs = {x, y, z};
        ctx->varsigma = s;
        ctx->level = s2 * s2 / q;
        ctx->K = K;
        ctx->L = L;
        ctx->T = T;
        ctx->J = J;
        record(ctx, "sqrt(L)", L, std::sqrt(std::max(L, 0.0)));
        record(ctx, "sqrt(12-81T^2)", rad, std::sqrt(std::max(rad, 0.0)));
        record(ctx, "J^(1/3)", J, r);
    }
    return std::sqrt(std::max(P, 0.0)) * s;
}

//--- Cardano -----------------------------------------------------------------------------

CardanoRoots cardano_branch(const std::array<double, 4>& coeffs, const CardanoRule& rule) {
    auto [c3, c2, c1, c0] = coeffs;
    if (c3 == 0) throw DomainError("leading coefficient is zero");
    double b = c2 / c3, c = c1 / c3, d = c0 / c3;
    double shift = -b / 3;
    double p = c - b * b / 3, q = 2 * b * b * b / 27 - b * c / 3 + d;
    if (!std::isfinite(p) || !std::isfinite(q)) throw DomainError("cubic coefficients are not finite");
    double scale = std::max({1.0, std::abs(b), std::abs(c), std::abs(d)});
    if (std::abs(p) < 1e-14 * scale && std::abs(q) < 1e-14 * scale) throw DomainError("triple root");
    cplx sq = std::sqrt(cplx(q * q / 4 + p * p * p / 27));
    if (rule.flip_sqrt) sq = -sq;
    cplx u3 = -q / 2 + sq;
    if (std::abs(u3) < 1e-300) u3 = -q / 2 - sq;
    cplx u = principal_cbrt(u3);
    const cplx zeta = std::polar(1.0, 2 * std::numbers::pi / 3);
    CardanoRoots out;
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
        out.roots[k] = uk - p / (3.0 * uk) + shift;
        uk *= zeta;
    }
    auto [P, Q, R] = out.roots;
    out.sum = P + Q + R;
    out.pair_sum = P * Q + P * R + Q * R;
    out.product = P * Q * R;
    out.square_sum = P * P + Q * Q + R * R;
    return out;
}

//--- exact series of the closed forms ------------------------------------------------------

namespace {

Series cos_series(const Rat& a, int n) {  // cos(a t)
    Series r(n);
    Rat term = 1;
    for (int k = 0; k < n; k += 2) {
        r[k] = term;
        term = -term * a * a / Rat((k + 1) * (k + 2));
    }
    return r;
}

Series sin_series(const Rat& a, int n) {  // sin(a t)
    Series r(n);
    Rat term = a;
    for (int k = 1; k < n; k += 2) {
        r[k] = term;
        term = -term * a * a / Rat((k + 1) * (k + 2));
    }
    return r;
}

Series monomial_series(const Rat& c, int power, int n) {
    Series r(n);
    if (power < n) r[power] = c;
    return r;
}

// every k-th coefficient of s from offset: Σ s[offset + k·i] z^i
Series decimate(const Series& s, int offset, int k, int n) {
    Series r(n);
    for (int i = 0; i < n && offset + k * i < static_cast<int>(s.size()); ++i) r[i] = s[offset + k * i];
    return r;
}

// λ(at, bt) and λ(bt, at) on a ray with κ = ab(a−b)
std::pair<Series, Series> lambda_ray_series(const Rat& a, const Rat& b, int n) {
    Rat kappa = a * b * (a - b);
    int m = n / 3 + 2;
    Series sm = dixon_sm_series(3 * m + 2), cm = dixon_cm_series(3 * m + 2);
    // sm(ς) = ς·S(ς³), cm(ς) = C(ς³), ς³ = κt³
    Series zt = monomial_series(kappa, 3, n);
    Series S = series_compose(decimate(sm, 1, 3, m), zt, n), C = series_compose(decimate(cm, 0, 3, m), zt, n);
    auto mul = [n](const Series& u, const Series& v) { return series_mul(u, v, n); };
    Series x = monomial_series(a, 1, n), y = monomial_series(b, 1, n);
    Series C2 = mul(C, C), C3 = mul(C2, C), S2 = mul(S, S);
    // ς²A = cς² − s c² y ς + s² x y and ς²B = c²ς² − s x ς + s² c x y
    Series A = series_add(series_add(C, series_scale(mul(mul(S, C2), y), -1)), mul(mul(S2, x), y));
    Series B = series_add(series_add(C2, series_scale(mul(S, x), -1)), mul(mul(mul(S2, C), x), y));
    // x − c³y = t(a − b·C³)
    Series D = series_add(Series{a}, series_scale(C3, -b));
    // λ(x,y) = ς³A²/(y(x−c³y)B) = κt·A²/(b·D·B); λ(y,x) = κt·B²/(a·D·A)
    Series first = series_scale(series_div(mul(A, A), mul(D, B), n), kappa / b);
    Series second = series_scale(series_div(mul(B, B), mul(D, A), n), kappa / a);
    first.insert(first.begin(), Rat(0));
    second.insert(second.begin(), Rat(0));
    first.resize(n);
    second.resize(n);
    return {first, second};
}

// 𝒲(k) = k⁵ − 5k⁴ − 10k³ + 10k² + 5k − 1
Series w5_of(const Series& k, int n) {
    static const long c[] = {1, -5, -10, 10, 5, -1};
    Series acc(n);
    for (long ci : c) {
        acc = series_mul(acc, k, n);
        acc[0] += ci;
    }
    return acc;
}

}  // namespace

Series tetra_U_series(int n) {
    // U(3t,t,2t) = (3tC + 2t²S)/(1 − 9t²S²) with sn(t√8) = √8·t·S, sn′(t√8) = C, modulus² 5/8
    Series sn = jacobi_sn_series(make_rat(5, 8), 2 * n + 2);
    Series S(n), C(n);
    Rat eight_i = 1;
    for (int i = 0; 2 * i < n; ++i) {
        Rat c = 2 * i + 1 < static_cast<int>(sn.size()) ? sn[2 * i + 1] : Rat(0);
        S[2 * i] = c * eight_i;
        C[2 * i] = c * eight_i * (2 * i + 1);
        eight_i *= 8;
    }
    Series t1 = monomial_series(1, 1, n), t2 = monomial_series(1, 2, n);
    Series num = series_add(series_scale(series_mul(t1, C, n), 3), series_scale(series_mul(t2, S, n), 2));
    Series den = series_add(Series{1}, series_scale(series_mul(t2, series_mul(S, S, n), n), -9));
    return series_div(num, den, n);
}

Series tetra_U_trig_series(int n) {
    // U(5t,4t,5t) = (45t cos 3t + 60t sin 3t)/(25cos²3t − 16)
    Series c = cos_series(3, n), s = sin_series(3, n), t1 = monomial_series(1, 1, n);
    Series num = series_mul(t1, series_add(series_scale(c, 45), series_scale(s, 60)), n);
    Series den = series_add(series_scale(series_mul(c, c, n), 25), Series{-16});
    return series_div(num, den, n);
}

std::pair<Series, Series> lambda_series(int n) { return lambda_ray_series(2, 1, n); }

Series octa_generic_ratio_series(int n) {
    using Q = QuadExt;
    // with s = t√3: g = s²℘(s), h = −s³℘′(s)/2, both series in t with constant term 1;
    // A = h·g^{−3/2} − (2/3)√−3·t²/g, and V/(t√2) = [((3+√−3)A^{1/3} + (3−√−3)A^{−1/3})/12 + 1/2]^{1/2}
    Series c = weierstrass_laurent(n + 2);
    Series g(n), h(n);
    for (int i = 0; i < n && i < static_cast<int>(c.size()); i += 2) {
        Rat three_pow = 1;
        for (int k = 0; k < i / 2; ++k) three_pow *= 3;
        g[i] = c[i] * three_pow;
        h[i] = -Rat(i - 2) / 2 * c[i] * three_pow;
    }
    auto lift = [](const Series& s) {
        std::vector<Q> r;
        for (const Rat& v : s) r.emplace_back(v, 0, -3);
        return r;
    };
    std::vector<Q> G = lift(g), H = lift(h);
    std::vector<Q> t2(n, Q(0));
    if (n > 2) t2[2] = Q(0, make_rat(-2, 3), -3);
    std::vector<Q> A = generic::mul(H, generic::pow(G, make_rat(-3, 2), n), n);
    std::vector<Q> second = generic::mul(t2, generic::inv(G, n), n);
    for (int i = 0; i < n; ++i) A[i] += second[i];
    std::vector<Q> a3 = generic::pow(A, make_rat(1, 3), n), am3 = generic::pow(A, make_rat(-1, 3), n);
    Q plus(3, 1, -3), minus(3, -1, -3);
    std::vector<Q> B(n, Q(0));
    for (int i = 0; i < n; ++i) B[i] = (plus * a3[i] + minus * am3[i]) / Q(12);
    B[0] += Q(make_rat(1, 2));
    std::vector<Q> V = generic::pow(B, make_rat(1, 2), n);
    Series out(n);
    for (int i = 0; i < n; ++i) {
        if (V[i].b != 0) throw NumericError("imaginary part survived in the ℘ route");
        out[i] = V[i].a;
    }
    return out;
}

std::pair<Series, Series> d5_gamma_series(int n) {
    // K(x) = k(α(−1) + ⁵√8·x), K(0) = −1, K′⁵ = 8𝒲(K)⁴/(K²+1)⁵ with K′(0) = 4:
    // K′ = 4·E^{1/5}, E = 𝒲(K)⁴/(128(K²+1)⁵), E(0) = 1
    int m = n + 1;
    Series K(m);
    K[0] = -1;
    for (int iter = 0; iter <= m; ++iter) {
        Series w = w5_of(K, m);
        Series w2 = series_mul(w, w, m), w4 = series_mul(w2, w2, m);
        Series k2 = series_add(series_mul(K, K, m), Series{1});
        Series k10 = Series{1};
        for (int i = 0; i < 5; ++i) k10 = series_mul(k10, k2, m);
        Series E = series_scale(series_div(w4, k10, m), make_rat(1, 128));
        Series Kp = series_scale(series_pow(E, make_rat(1, 5), m), 4);
        Series next(m);
        next[0] = -1;
        for (int i = 1; i < m; ++i) next[i] = Kp[i - 1] / i;
        K = next;
    }
    // γ(x,−x)/x = −K·(𝒲(K)/8)^{−1/5}; γ(x,−x)/γ(−x,x) = K
    Series first = series_scale(series_mul(K, series_pow(series_scale(w5_of(K, m), make_rat(1, 8)), make_rat(-1, 5), m), m), -1);
    return {first, K};
}

//--- reports --------------------------------------------------------------------------------

namespace {

std::string str(const Rat& r) { return to_string(r); }

void compare_rows(SeriesMatchReport& rep, const Series& closed, const Series& series, const Series& reference,
                  int first_power) {
    Rat worst = 0;
    if (!rep.max_exact_mismatch.empty()) worst = parse_rat(rep.max_exact_mismatch);
    for (int i = first_power; i <= rep.order; ++i) {
        SeriesRow row;
        row.power = i;
        if (i < static_cast<int>(closed.size())) row.closed_form = str(closed[i]);
        if (i < static_cast<int>(series.size())) row.series = str(series[i]);
        if (i < static_cast<int>(reference.size())) row.reference = str(reference[i]);
        if (!row.closed_form.empty() && !row.series.empty()) worst = std::max(worst, Rat(abs(closed[i] - series[i])));
        if (!row.reference.empty() && !row.series.empty()) worst = std::max(worst, Rat(abs(reference[i] - series[i])));
        rep.rows.push_back(row);
    }
    rep.max_exact_mismatch = str(worst);
}

Series rats(std::initializer_list<const char*> xs) {
    Series r;
    for (const char* s : xs) r.push_back(parse_rat(s));
    return r;
}

const std::vector<double> kSampleT{0.01, 0.05, 0.1};
constexpr int kNumericOrder = 40;

double numeric_gap(const Series& s, const std::function<double(double)>& f, const std::vector<double>& ts) {
    double worst = 0;
    for (double t : ts) worst = std::max(worst, std::abs(f(t) - series_eval(s, t)));
    return worst;
}

void finish(SeriesMatchReport& rep, double numeric_tol) {
    rep.pass = parse_rat(rep.max_exact_mismatch) == 0 && rep.max_numeric_mismatch < numeric_tol &&
               (!rep.invariant_deviation || *rep.invariant_deviation < 1e-12);
}

SeriesMatchReport tetra_report(bool trig, int order) {
    SeriesMatchReport rep;
    rep.theorem = trig ? "thm-s4-trig" : "thm-s4";
    rep.ray = trig ? "(5t,4t,5t)" : "(3t,t,2t)";
    rep.quantity = trig ? "U(5t,4t,5t)" : "U(3t,t,2t)";
    rep.order = order;
    rep.exact = true;
    std::vector<Rat> d = trig ? std::vector<Rat>{5, 4, 5} : std::vector<Rat>{3, 1, 2};
    Series closed = trig ? tetra_U_trig_series(order + 1) : tetra_U_series(order + 1);
    Series series = ray_series(tetra_field(), d, order)[0];
    Series ref = trig ? rats({"0", "5", "20", "205/2", "470", "17635/8", "20527/2", "765869/16", "6247769/28",
                             "932089729/896"})
                      : rats({"0", "3", "2", "15/2", "41/3", "253/8", "3349/60", "5557/48", "555509/2520",
                             "5934937/13440"});
    compare_rows(rep, closed, series, ref, 1);
    Series fine = ray_series(tetra_field(), d, kNumericOrder)[0];
    rep.sample_t = kSampleT;
    rep.max_numeric_mismatch = numeric_gap(
        fine,
        [&](double t) { return tetra_U(to_double(d[0]) * t, to_double(d[1]) * t, to_double(d[2]) * t); },
        kSampleT);
    finish(rep, 1e-10);
    return rep;
}

SeriesMatchReport dixon_report(int order) {
    SeriesMatchReport rep;
    rep.theorem = "thm2";
    rep.ray = "(2t,t)";
    rep.quantity = "λ(2t,t) then λ(t,2t)";
    rep.order = order;
    rep.exact = true;
    auto [l1, l2] = lambda_series(order + 1);
    auto ray = ray_series(dixon_field(), std::vector<Rat>{2, 1}, order);
    compare_rows(rep, l1, ray[0], {}, 1);
    compare_rows(rep, l2, ray[1], {}, 1);
    auto fine = ray_series(dixon_field(), std::vector<Rat>{2, 1}, kNumericOrder);
    rep.sample_t = kSampleT;
    rep.max_numeric_mismatch =
        std::max(numeric_gap(fine[0], [](double t) { return lambda_dixon(2 * t, t).first; }, kSampleT),
                 numeric_gap(fine[1], [](double t) { return lambda_dixon(2 * t, t).second; }, kSampleT));
    finish(rep, 1e-10);
    return rep;
}

SeriesMatchReport spec_report(int order) {
    SeriesMatchReport rep;
    rep.theorem = "thm-spec";
    rep.ray = "(3t,2t,t)";
    rep.quantity = "V(3t,2t,t)";
    rep.order = order;
    rep.exact = false;
    std::vector<Rat> d{3, 2, 1};
    Series series = ray_series(octa_field(), d, order)[0];
    Series ref = rats({"0", "3", "3/7", "-51/98", "-10/7", "-671/2744", "2669/980", "12969121/4033680",
                       "-49074611/19765032"});
    compare_rows(rep, {}, series, ref, 1);
    Series fine = ray_series(octa_field(), d, kNumericOrder)[0];
    rep.sample_t = kSampleT;
    rep.max_numeric_mismatch =
        numeric_gap(fine, [](double t) { return octa_V_singular(3 * t, 2 * t, t); }, kSampleT);
    double inv = 0;
    for (double t : kSampleT) inv = std::max(inv, std::abs(std::abs(octa_J_singular(3 * t, 2 * t, t)) - 1));
    rep.invariant_deviation = inv;
    finish(rep, 1e-10);
    return rep;
}

SeriesMatchReport generic_report(int order) {
    SeriesMatchReport rep;
    rep.theorem = "thm4";
    rep.ray = "(t√2,t,0)";
    rep.quantity = "V(t√2,t,0)/(t√2)";
    rep.order = order;
    rep.exact = true;
    auto ratio = [](const std::vector<QuadExt>& comp, int n) {
        // coefficient of t^{i+1} divided by √2
        Series r(n);
        QuadExt half_root2(0, make_rat(1, 2), 2);
        for (int i = 0; i < n && i + 1 < static_cast<int>(comp.size()); ++i) {
            QuadExt q = comp[i + 1] * half_root2;
            if (q.b != 0) throw NumericError("irrational coefficient on the √2 ray");
            r[i] = q.a;
        }
        return r;
    };
    std::vector<QuadExt> d{QuadExt(0, 1, 2), QuadExt(1), QuadExt(0)};
    Series series = ratio(ray_series(octa_field(), d, order + 1)[0], order + 1);
    Series closed = octa_generic_ratio_series(order + 1);
    Series ref = rats({"1", "0", "1/18", "0", "-13/648", "0", "-53/19440", "0", "7663/4199040", "0",
                       "76183/377913600"});
    compare_rows(rep, closed, series, ref, 0);
    Series fine = ratio(ray_series(octa_field(), d, kNumericOrder + 1)[0], kNumericOrder + 1);
    rep.sample_t = kSampleT;
    rep.max_numeric_mismatch = numeric_gap(
        fine, [](double t) { return octa_V_generic(kSqrt2 * t, t, 0) / (kSqrt2 * t); }, kSampleT);
    double inv = 0;
    for (double t : kSampleT) {
        ClosedFormContext ctx;
        octa_V_generic(kSqrt2 * t, t, 0, &ctx);
        inv = std::max(inv, std::abs(std::abs(*ctx.J) - 24 * kSqrt3) / (24 * kSqrt3));
    }
    rep.invariant_deviation = inv;
    finish(rep, 1e-10);
    return rep;
}

}  // namespace

SeriesMatchReport d5_gamma_verify(int n) {
    if (n > 12) throw DomainError("order must be at most 12");
    SeriesMatchReport rep;
    rep.theorem = "thm-d10";
    rep.ray = "(x,-x)";
    rep.quantity = "γ(x,−x)/x then γ(x,−x)/γ(−x,x)";
    rep.order = n;
    rep.exact = true;
    auto [first, swap] = d5_gamma_series(n + 1);
    auto ray = ray_series(d5_field(), std::vector<Rat>{1, -1}, n + 1);
    Series a(ray[0].begin() + 1, ray[0].end()), b(ray[1].begin() + 1, ray[1].end());
    Series series_first = a, series_swap = series_div(a, b, n + 1);
    compare_rows(rep, first, series_first,
                 rats({"1", "-2", "8", "8", "-16", "-768/5", "2944/5", "84352/35", "-357632/35"}), 0);
    compare_rows(rep, swap, series_swap, rats({"-1", "4", "-8", "-32", "160", "1216/5", "-13824/5", "-55808/35"}),
                 0);
    finish(rep, 1);
    return rep;
}

std::vector<std::string> theorem_ids() { return {"thm2", "thm-s4", "thm-s4-trig", "thm-spec", "thm4", "thm-d10"}; }

SeriesMatchReport verify_theorem(const std::string& theorem, int order) {
    if (order < 1) throw DomainError("order must be positive");
    if (theorem == "thm2") return dixon_report(order);
    if (theorem == "thm-s4") return tetra_report(false, order);
    if (theorem == "thm-s4-trig") return tetra_report(true, order);
    if (theorem == "thm-spec") return spec_report(order);
    if (theorem == "thm4") return generic_report(order);
    if (theorem == "thm-d10") return d5_gamma_verify(order);
    throw DomainError("unknown theorem '" + theorem + "'");
}

}  // namespace superflow

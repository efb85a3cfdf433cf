#include "superflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "superflow/errors.hpp"
#include "superflow/parallel.hpp"

namespace superflow {

namespace {

template <class T>
T lift(const Rat& c) {
    if constexpr (std::is_same_v<T, double>) return to_double(c);
    else return T(c);
}

template <class T>
T eval_exact(const MPoly& p, const std::vector<T>& x) {
    T acc = lift<T>(Rat(0));
    for (const auto& [m, c] : p.terms()) {
        T term = lift<T>(c);
        for (int i = 0; i < p.nvars(); ++i)
            for (int k = 0; k < m.e[i]; ++k) term = term * x[i];
        acc = acc + term;
    }
    return acc;
}

// Numerators over a denominator; a constant denominator is folded into the numerators.
struct SplitField {
    std::vector<MPoly> num;
    MPoly den;
    bool polynomial;
};

SplitField split(const VectorField& v) {
    SplitField s{v.numerators(), v.denominator(), v.is_polynomial()};
    if (s.polynomial) {
        Rat c = 1 / s.den.constant_term();
        for (auto& p : s.num) p *= c;
        s.den = MPoly(v.dim(), Rat(1));
    }
    return s;
}

MPoly lie(const MPoly& p, const std::vector<MPoly>& f) {
    MPoly r(p.nvars());
    for (int k = 0; k < static_cast<int>(f.size()); ++k) r += p.derivative(k) * f[k];
    return r;
}

}  // namespace

//--- series ------------------------------------------------------------------

RatFunc FlowSeries::term(int j, int k) const {
    const SeriesTerm& t = components.at(j).at(k);
    return RatFunc(t.num, denominator.pow(t.den_power));
}

MPoly FlowSeries::poly_term(int j, int k) const {
    if (!is_polynomial()) throw DomainError("series has a nonconstant denominator");
    return components.at(j).at(k).num * (1 / denominator.constant_term());
}

MPoly FlowSeries::truncated_sum(int j) const {
    MPoly s(dim());
    for (int k = 0; k < static_cast<int>(components.at(j).size()); ++k) s += poly_term(j, k);
    return s;
}

FlowSeries identity_series(int dim) {
    FlowSeries s;
    s.order = 1;
    s.denominator = MPoly(dim, Rat(1));
    for (int j = 0; j < dim; ++j) s.components.push_back({SeriesTerm{MPoly::var(dim, j), 0}});
    return s;
}

FlowSeries taylor_projective(const VectorField& v, int order) {
    if (v.dim() == 0 || v.degree() != 2) throw DomainError("projective series needs a 2-homogeneous field");
    if (order < 1) throw DomainError("series order must be >= 1");
    SplitField f = split(v);
    int n = v.dim();
    MPoly g = f.polynomial ? MPoly(n) : lie(f.den, f.num);
    FlowSeries s = identity_series(n);
    s.order = order;
    s.denominator = f.den;
    for (int j = 0; j < n; ++j) {
        auto& terms = s.components[j];
        for (int i = 1; i < order; ++i) {
            const SeriesTerm& cur = terms.back();
            Rat inv = Rat(1, i);
            MPoly push = lie(cur.num, f.num);
            if (f.polynomial) terms.push_back({push * inv, 0});
            else if (g.is_zero()) terms.push_back({push * inv, cur.den_power + 1});
            else
                terms.push_back({(f.den * push - cur.num * g * Rat(cur.den_power)) * inv, cur.den_power + 2});
        }
    }
    return s;
}

FlowSeries taylor_general(const VectorField& v, int order) {
    if (!v.is_polynomial()) throw DomainError("general series needs polynomial components");
    return taylor_general(v.polynomial_components(), order);
}

FlowSeries taylor_general(const std::vector<MPoly>& comps, int order) {
    if (order < 0) throw DomainError("series order must be >= 0");
    int n = static_cast<int>(comps.size());
    if (n == 0 || n > kMaxVars) throw DomainError("field dimension out of range");
    std::vector<MPoly> f;
    for (const auto& p : comps) {
        if (p.nvars() > n) throw DomainError("component uses more variables than the field dimension");
        f.push_back(p.extended(n));
    }
    FlowSeries s;
    s.kind = SeriesKind::general;
    s.order = order;
    s.denominator = MPoly(n, Rat(1));
    for (int j = 0; j < n; ++j) {
        std::vector<SeriesTerm> terms{{MPoly::var(n, j), 0}};
        for (int l = 1; l <= order; ++l) terms.push_back({lie(terms.back().num, f) * Rat(1, l), 0});
        s.components.push_back(std::move(terms));
    }
    return s;
}

template <class T>
std::vector<T> ray_coefficients(const FlowSeries& s, int j, const std::vector<T>& direction) {
    if (static_cast<int>(direction.size()) != s.dim()) throw DomainError("ray dimension mismatch");
    T d = eval_exact(s.denominator, direction);
    std::vector<T> out;
    for (const auto& t : s.components.at(j)) {
        T v = eval_exact(t.num, direction);
        for (int k = 0; k < t.den_power; ++k) v = v / d;
        out.push_back(v);
    }
    return out;
}

template std::vector<Rat> ray_coefficients(const FlowSeries&, int, const std::vector<Rat>&);
template std::vector<QuadExt> ray_coefficients(const FlowSeries&, int, const std::vector<QuadExt>&);
template std::vector<double> ray_coefficients(const FlowSeries&, int, const std::vector<double>&);

std::vector<Rat> ray_coefficients(const FlowSeries& s, int j, std::initializer_list<long> direction) {
    std::vector<Rat> d;
    for (long x : direction) d.emplace_back(x);
    return ray_coefficients(s, j, d);
}

namespace {

template <class T>
std::vector<T> eval_on_series(const MPoly& p, const std::vector<std::vector<std::vector<T>>>& powers, int m) {
    std::vector<T> acc(m, T(Rat(0)));
    for (const auto& [mono, c] : p.terms()) {
        std::vector<T> term(m, T(Rat(0)));
        term[0] = T(c);
        for (int i = 0; i < p.nvars(); ++i)
            if (mono.e[i] > 0) term = generic::mul(term, powers[i][mono.e[i]], m);
        for (int k = 0; k < m; ++k) acc[k] += term[k];
    }
    return acc;
}

}  // namespace

template <class T>
std::vector<std::vector<T>> ray_series(const VectorField& v, const std::vector<T>& direction, int order) {
    int n = v.dim();
    if (static_cast<int>(direction.size()) != n) throw DomainError("direction has wrong dimension");
    if (order < 1) throw DomainError("order must be positive");
    int maxdeg = std::max(v.denominator().degree(), 0);
    for (const auto& p : v.numerators()) maxdeg = std::max(maxdeg, p.degree());
    // x(t) = φ^t(d); φ(t·d) = t·x(t)
    std::vector<std::vector<T>> x(n, std::vector<T>(order, T(Rat(0))));
    for (int j = 0; j < n; ++j) x[j][0] = direction[j];
    for (int k = 0; k + 1 < order; ++k) {
        int m = k + 1;
        std::vector<std::vector<std::vector<T>>> powers(n);
        for (int i = 0; i < n; ++i) {
            std::vector<T> xi(x[i].begin(), x[i].begin() + m);
            powers[i].push_back(std::vector<T>(m, T(Rat(0))));
            powers[i][0][0] = T(Rat(1));
            for (int e = 1; e <= maxdeg; ++e) powers[i].push_back(generic::mul(powers[i].back(), xi, m));
        }
        std::vector<T> dinv = generic::inv(eval_on_series(v.denominator(), powers, m), m);
        for (int j = 0; j < n; ++j) {
            std::vector<T> f = generic::mul(eval_on_series(v.numerator(j), powers, m), dinv, m);
            x[j][m] = f[k] / T(Rat(m));
        }
    }
    std::vector<std::vector<T>> out(n, std::vector<T>(order + 1, T(Rat(0))));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < order; ++i) out[j][i + 1] = x[j][i];
    return out;
}

template std::vector<std::vector<Rat>> ray_series(const VectorField&, const std::vector<Rat>&, int);
template std::vector<std::vector<QuadExt>> ray_series(const VectorField&, const std::vector<QuadExt>&, int);

std::optional<int> pde_residual(const FlowSeries& s, const VectorField& v) {
    if (s.dim() != v.dim()) throw DomainError("series and field dimensions differ");
    if (s.kind != SeriesKind::projective) throw DomainError("residual needs a projective series");
    int n = v.dim();
    std::optional<int> best;
    auto note = [&best](int d) {
        if (!best || d < *best) best = d;
    };
    if (s.is_polynomial() && v.is_polynomial()) {
        auto f = v.polynomial_components();
        for (int j = 0; j < n; ++j) {
            MPoly u = s.truncated_sum(j);
            MPoly r = u;
            for (int k = 0; k < n; ++k) r += u.derivative(k) * (f[k] - MPoly::var(n, k));
            if (!r.is_zero()) note(r.min_degree());
        }
        return best;
    }
    // degree-i part: Σ_k ∂_k(term_{i−1})·V_k + (1−i)·term_i
    for (int j = 0; j < n; ++j) {
        int len = static_cast<int>(s.components[j].size());
        for (int i = 2; i <= len + 1; ++i) {
            RatFunc prev = s.term(j, i - 2), r{MPoly(n)};
            for (int k = 0; k < n; ++k) r = r + prev.derivative(k) * v.component(k);
            if (i <= len) r = r + s.term(j, i - 1) * RatFunc(MPoly(n, Rat(1 - i)));
            if (!r.is_zero()) {
                note(i);
                break;
            }
        }
    }
    return best;
}

namespace {

MPoly det3(const std::array<std::array<const MPoly*, 3>, 3>& m, int deg) {
    auto mt = [deg](const MPoly& a, const MPoly& b) { return mul_truncated(a, b, deg); };
    return mt(*m[0][0], mt(*m[1][1], *m[2][2]) - mt(*m[1][2], *m[2][1])) -
           mt(*m[0][1], mt(*m[1][0], *m[2][2]) - mt(*m[1][2], *m[2][0])) +
           mt(*m[0][2], mt(*m[1][0], *m[2][1]) - mt(*m[1][1], *m[2][0]));
}

bool determinant_identity(const MPoly& u, const MPoly& v, const MPoly& w, int deg) {
    int n = 3;
    auto x = [n](int i) { return MPoly::var(n, i); };
    const MPoly* fns[3] = {&u, &v, &w};
    std::array<std::array<MPoly, 4>, 3> rows;
    for (int r = 0; r < 3; ++r) {
        rows[r][0] = *fns[r];
        for (int k = 0; k < 3; ++k) rows[r][k + 1] = fns[r]->derivative(k);
    }
    std::array<MPoly, 4> top;
    top[0] = (x(0) * rows[0][1] + x(1) * rows[0][2] + x(2) * rows[0][3] - u) * Rat(2);
    for (int c = 0; c < 3; ++c) {
        MPoly e(n);
        for (int k = 0; k < 3; ++k) e += x(k) * rows[0][c + 1].derivative(k);
        top[c + 1] = e;
    }
    MPoly det(n);
    for (int c = 0; c < 4; ++c) {
        std::array<std::array<const MPoly*, 3>, 3> minor;
        for (int r = 0; r < 3; ++r)
            for (int cc = 0, k = 0; cc < 4; ++cc)
                if (cc != c) minor[r][k++] = &rows[r][cc];
        MPoly term = mul_truncated(top[c], det3(minor, deg), deg);
        if (c % 2) det -= term;
        else det += term;
    }
    return det.is_zero();
}

}  // namespace

bool nonlinear_pde_residual(const FlowSeries& su, const FlowSeries& sv, const FlowSeries& sw, int order) {
    for (const FlowSeries* s : {&su, &sv, &sw})
        if (s->dim() != 3 || s->kind != SeriesKind::projective)
            throw DomainError("determinant identity needs three-dimensional projective series");
    return determinant_identity(su.truncated_sum(0).truncated(order), sv.truncated_sum(1).truncated(order),
                                sw.truncated_sum(2).truncated(order), order);
}

VectorField psi_field(int n, int m) {
    auto p = [](const char* s) { return parse_poly(s, {"x", "y", "z"}); };
    return VectorField({p("x*z") * Rat(n - 1), p("y*z") * Rat(m - 1), p("-z^2")});
}

//--- orbit integration -----------------------------------------------------------

namespace {

// Polynomial compiled to doubles for the integrator's inner loop.
struct FastPoly {
    struct Term {
        double c;
        std::array<int8_t, kMaxVars> e;
    };
    std::vector<Term> terms;
    int n = 0, maxdeg = 0;

    explicit FastPoly(const MPoly& p) : n(p.nvars()) {
        for (const auto& [m, c] : p.terms()) {
            Term t{to_double(c), {}};
            for (int i = 0; i < n; ++i) {
                t.e[i] = static_cast<int8_t>(m.e[i]);
                maxdeg = std::max(maxdeg, m.e[i]);
            }
            terms.push_back(t);
        }
    }

    double operator()(const double* x) const {
        double pw[kMaxVars][64];
        for (int i = 0; i < n; ++i) {
            pw[i][0] = 1;
            for (int k = 1; k <= maxdeg; ++k) pw[i][k] = pw[i][k - 1] * x[i];
        }
        double acc = 0;
        for (const auto& t : terms) {
            double v = t.c;
            for (int i = 0; i < n; ++i) v *= pw[i][t.e[i]];
            acc += v;
        }
        return acc;
    }
};

struct FastField {
    std::vector<FastPoly> num;
    FastPoly den;
    int den_degree;
    double sign;

    FastField(const VectorField& v, bool negate)
        : den(v.denominator()), den_degree(std::max(0, v.denominator().degree())), sign(negate ? -1 : 1) {
        for (const auto& p : v.numerators()) {
            if (p.degree() > 63) throw DomainError("field degree too large for the integrator");
            num.emplace_back(p);
        }
    }

    void operator()(const std::vector<double>& x, std::vector<double>& out) const {
        double d = den(x.data());
        double scale = 0;
        for (double xi : x) scale = std::max(scale, std::abs(xi));
        if (!std::isfinite(d) || std::abs(d) <= 1e-14 * std::pow(scale, den_degree)) {
            std::string at;
            for (double xi : x) at += (at.empty() ? "" : ", ") + std::to_string(xi);
            throw NumericError("field denominator vanishes at (" + at + ")");
        }
        for (std::size_t i = 0; i < num.size(); ++i) out[i] = sign * num[i](x.data()) / d;
    }
};

// Dormand–Prince 5(4) tableau
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double A71 = 35.0 / 384, A73 = 500.0 / 1113, A74 = 125.0 / 192, A75 = -2187.0 / 6784, A76 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

}  // namespace

OrbitTrace integrate_orbit(const VectorField& v, const std::vector<double>& x0, double t_end, double rtol,
                           const std::vector<MPoly>& monitors, const OrbitOptions& opt) {
    if (static_cast<int>(x0.size()) != v.dim()) throw DomainError("initial point has wrong dimension");
    if (!(rtol >= 1e-13 && rtol <= 1e-3)) throw DomainError("rtol must lie in [1e-13, 1e-3]");
    if (!(t_end >= 0) || !std::isfinite(t_end)) throw DomainError("t_end must be finite and >= 0");
    const int n = v.dim();
    const double atol = opt.atol > 0 ? opt.atol : rtol * 1e-2;

    std::vector<FastPoly> mons;
    for (const auto& w : monitors) mons.emplace_back(w.extended(n));
    std::vector<double> w0;
    for (const auto& m : mons) w0.push_back(m(x0.data()));

    OrbitTrace tr;
    tr.integral_drift.assign(mons.size(), 0.0);
    auto record = [&](double t, const std::vector<double>& x) {
        std::vector<double> dr;
        for (std::size_t i = 0; i < mons.size(); ++i) {
            double d = std::abs(mons[i](x.data()) - w0[i]) / std::max(1.0, std::abs(w0[i]));
            tr.integral_drift[i] = std::max(tr.integral_drift[i], d);
            dr.push_back(d);
        }
        tr.times.push_back(t);
        tr.states.push_back(x);
        tr.drift_history.push_back(std::move(dr));
    };
    record(0, x0);
    if (t_end == 0) return tr;
    if (std::all_of(x0.begin(), x0.end(), [](double c) { return c == 0; })) {
        record(t_end, x0);  // fixed point
        return tr;
    }

    FastField f(v, opt.negate);
    std::vector<double> y = x0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n);
    auto norm_sc = [&](const std::vector<double>& a, const std::vector<double>& ref) {
        double s = 0;
        for (int i = 0; i < n; ++i) {
            double sc = atol + rtol * std::abs(ref[i]);
            s += (a[i] / sc) * (a[i] / sc);
        }
        return std::sqrt(s / n);
    };
    f(y, k1);
    double d0 = norm_sc(y, y), d1 = norm_sc(k1, y);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end);

    const double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75, facmin = 0.2, facmax = 10.0;
    double t = 0, errold = 1e-4;
    bool last_rejected = false;
    long steps = 0;
    while (t < t_end) {
        if (++steps > opt.max_steps) throw NumericError("step limit exceeded");
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw NumericError("step size underflow at t = " + std::to_string(t));
        bool final_step = t + h >= t_end;
        if (final_step) h = t_end - t;
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * A21 * k1[i];
        f(yt, k2);
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        f(yt, k3);
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        f(yt, k4);
        for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        f(yt, k5);
        for (int i = 0; i < n; ++i)
            yt[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        f(yt, k6);
        for (int i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        f(ynew, k7);
        double err = 0;
        for (int i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / n);
        if (!std::isfinite(err)) throw NumericError("non-finite step near t = " + std::to_string(t));
        if (err <= 1.0) {
            double fac = std::pow(err, expo1) / std::pow(errold, beta) / safe;
            fac = std::clamp(fac, 1.0 / facmax, 1.0 / facmin);
            errold = std::max(err, 1e-4);
            t = final_step ? t_end : t + h;
            y = ynew;
            k1 = k7;
            ++tr.accepted;
            record(t, y);
            double hnew = h / fac;
            if (last_rejected) hnew = std::min(hnew, h);
            last_rejected = false;
            h = hnew;
        } else {
            double fac = std::pow(err, expo1) / safe;
            h /= std::min(1.0 / facmin, fac);
            ++tr.rejected;
            last_rejected = true;
        }
    }
    return tr;
}

std::vector<double> flow_point(const VectorField& v, const std::vector<double>& x0, double t, double rtol) {
    return integrate_orbit(v, x0, t, rtol).states.back();
}

double semigroup_check(const VectorField& v, const std::vector<double>& x0, double s, double t, double rtol) {
    std::vector<double> two_legs = flow_point(v, flow_point(v, x0, s, rtol), t, rtol);
    std::vector<double> one_leg = flow_point(v, x0, s + t, rtol);
    double dev = 0;
    for (std::size_t i = 0; i < x0.size(); ++i) dev = std::max(dev, std::abs(two_legs[i] - one_leg[i]));
    return dev;
}

void write_csv(std::ostream& os, const OrbitTrace& trace) {
    std::size_t n = trace.states.empty() ? 0 : trace.states[0].size();
    os << "t";
    for (std::size_t i = 0; i < n; ++i) os << ",x" << i + 1;
    for (std::size_t i = 0; i < trace.integral_drift.size(); ++i) os << ",drift" << i + 1;
    os << '\n';
    os.precision(17);
    for (std::size_t r = 0; r < trace.times.size(); ++r) {
        os << trace.times[r];
        for (double x : trace.states[r]) os << ',' << x;
        for (double d : trace.drift_history[r]) os << ',' << d;
        os << '\n';
    }
}

//--- planar projections -----------------------------------------------------------

std::string to_string(ProjectionMode m) { return m == ProjectionMode::stereographic ? "stereographic" : "orthogonal"; }

std::array<double, 3> stereographic_inverse(double a, double b) {
    double s = a * a + b * b + 4;
    return {4 * a / s, 4 * b / s, (a * a + b * b - 4) / s};
}

std::array<double, 2> stereographic_chart(const std::array<double, 3>& p) {
    return {2 * p[0] / (1 - p[2]), 2 * p[1] / (1 - p[2])};
}

std::array<double, 3> orthogonal_inverse(double a, double b) {
    return {a + 1 / (4 * a), a - 1 / (4 * a), b};
}

namespace {

// N(X/(4α), Y/(4α), β) with X = 4α²+1, Y = 4α²−1, as a quotient in (α, β).
RatFunc on_hyperbola(const MPoly& p) {
    MPoly a = MPoly::var(2, 0), b = MPoly::var(2, 1);
    MPoly X = a * a * Rat(4) + MPoly(2, Rat(1)), Y = a * a * Rat(4) - MPoly(2, Rat(1)), four_a = a * Rat(4);
    int dmax = 0;
    for (const auto& [m, c] : p.terms()) dmax = std::max(dmax, m.e[0] + m.e[1]);
    MPoly num(2);
    for (const auto& [m, c] : p.terms())
        num += X.pow(m.e[0]) * Y.pow(m.e[1]) * b.pow(m.e[2]) * four_a.pow(dmax - m.e[0] - m.e[1]) * c;
    return RatFunc(num, four_a.pow(dmax));
}

const VectorField& tetra_field() {
    static const VectorField s({parse_poly("y*z", {"x", "y", "z"}), parse_poly("x*z", {"x", "y", "z"}),
                                parse_poly("x*y", {"x", "y", "z"})});
    return s;
}

}  // namespace

PlanarField planar_projection(const VectorField& v, ProjectionMode mode, const Grid& grid, double tau_v) {
    if (v.dim() != 3) throw DomainError("planar projection needs a three-dimensional field");
    if (grid.resolution < 2) throw DomainError("grid resolution must be >= 2");
    PlanarField out;
    out.mode = mode;
    MPoly a = MPoly::var(2, 0), b = MPoly::var(2, 1);

    if (mode == ProjectionMode::stereographic) {
        MPoly s = a * a + b * b + MPoly(2, Rat(4));
        std::vector<MPoly> q{a * Rat(4), b * Rat(4), s - MPoly(2, Rat(8))};
        std::vector<MPoly> nq;
        for (const auto& p : v.numerators()) nq.push_back(substitute(p, q));
        MPoly dq = substitute(v.denominator(), q);
        int e = v.degree();
        MPoly den = s.pow(std::max(e, 0)) * dq;
        MPoly pin = nq[0] * Rat(2) + a * nq[2], thn = nq[1] * Rat(2) + b * nq[2];
        if (e < 0) {
            pin = pin * s.pow(-e);
            thn = thn * s.pow(-e);
        }
        out.closed_form = {RatFunc(pin, den), RatFunc(thn, den)};
        MPoly tden = den * Rat(8);
        out.true_projection = {RatFunc(pin * s, tden), RatFunc(thn * s, tden)};
    } else {
        std::vector<RatFunc> comps;
        for (const auto& p : v.numerators()) comps.push_back(on_hyperbola(p));
        RatFunc d = on_hyperbola(v.denominator());
        RatFunc pi = (comps[0] + comps[1]) / (d * RatFunc(MPoly(2, Rat(2))));
        RatFunc th = comps[2] / d;
        out.closed_form = {pi, th};
        if (v == tetra_field()) {
            RatFunc ref_pi(a * b), ref_th(a.pow(4) * Rat(16) - MPoly(2, Rat(1)), a * a * Rat(16));
            out.reference_match = pi == ref_pi && th == ref_th;
        }
    }

    int res = grid.resolution;
    std::size_t total = static_cast<std::size_t>(res) * res;
    std::vector<std::optional<PlanarSample>> slots(total);
    std::vector<double> tangency(total, 0.0), deviation(total, 0.0);
    const auto& cf = *out.closed_form;
    parallel_for(total, [&](std::size_t idx) {
        double al = grid.a0 + (grid.a1 - grid.a0) * static_cast<double>(idx / res) / (res - 1);
        double be = grid.b0 + (grid.b1 - grid.b0) * static_cast<double>(idx % res) / (res - 1);
        std::array<double, 3> p;
        if (mode == ProjectionMode::stereographic) {
            p = stereographic_inverse(al, be);
            if (1 - p[2] < 1e-9) return;
        } else {
            if (std::abs(al) < 1e-9) return;
            p = orthogonal_inverse(al, be);
        }
        std::vector<double> V = v.eval<double>(std::span<const double>(p.data(), 3));
        PlanarSample smp{al, be, 0, 0};
        if (mode == ProjectionMode::stereographic) {
            tangency[idx] = std::abs(p[0] * V[0] + p[1] * V[1] + p[2] * V[2]);
            smp.pi = 2 * V[0] + 2 * p[0] * V[2] / (1 - p[2]);
            smp.theta = 2 * V[1] + 2 * p[1] * V[2] / (1 - p[2]);
        } else {
            tangency[idx] = std::abs(p[0] * V[0] - p[1] * V[1]);
            smp.pi = (V[0] + V[1]) / 2;
            smp.theta = V[2];
        }
        double ab[2] = {al, be};
        std::span<const double> sab(ab, 2);
        double cp = cf.first.eval(sab), ct = cf.second.eval(sab);
        deviation[idx] = std::max(std::abs(cp - smp.pi) / std::max(1.0, std::abs(smp.pi)),
                                  std::abs(ct - smp.theta) / std::max(1.0, std::abs(smp.theta)));
        slots[idx] = smp;
    });
    double worst = *std::max_element(tangency.begin(), tangency.end());
    if (worst > tau_v)
        throw DomainError("field is not tangent to the projected surface (residual " + std::to_string(worst) + ")");
    out.max_closed_form_deviation = *std::max_element(deviation.begin(), deviation.end());
    for (auto& s : slots)
        if (s) out.samples.push_back(*s);
    return out;
}

double circle_invariance_residual(const PlanarField& f, double ca, double cb, double r, int samples) {
    if (!f.closed_form) throw DomainError("projection has no closed form");
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        double th = 2 * std::numbers::pi * (i + 0.5) / samples;
        double ab[2] = {ca + r * std::cos(th), cb + r * std::sin(th)};
        std::span<const double> s(ab, 2);
        double p = f.closed_form->first.eval(s), q = f.closed_form->second.eval(s);
        double len = std::hypot(p, q);
        if (!std::isfinite(len) || len < 1e-12) continue;
        worst = std::max(worst, std::abs(p * (ab[0] - ca) + q * (ab[1] - cb)) / (r * len));
    }
    return worst;
}

void write_csv(std::ostream& os, const PlanarField& f) {
    os << "alpha,beta,Pi,Theta\n";
    os.precision(17);
    for (const auto& s : f.samples) os << s.alpha << ',' << s.beta << ',' << s.pi << ',' << s.theta << '\n';
}

//--- trigonometric fields ---------------------------------------------------------------

namespace {

// Value, gradient and Hessian in up to three variables.
struct Jet {
    double v = 0;
    std::array<double, 3> g{};
    std::array<std::array<double, 3>, 3> h{};

    static Jet var(int i, double x) {
        Jet j;
        j.v = x;
        j.g[i] = 1;
        return j;
    }
    static Jet constant(double c) {
        Jet j;
        j.v = c;
        return j;
    }
};

Jet operator+(Jet a, const Jet& b) {
    a.v += b.v;
    for (int i = 0; i < 3; ++i) {
        a.g[i] += b.g[i];
        for (int k = 0; k < 3; ++k) a.h[i][k] += b.h[i][k];
    }
    return a;
}

Jet operator*(double c, Jet a) {
    a.v *= c;
    for (int i = 0; i < 3; ++i) {
        a.g[i] *= c;
        for (int k = 0; k < 3; ++k) a.h[i][k] *= c;
    }
    return a;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-1.0) * b; }

Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    for (int i = 0; i < 3; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int k = 0; k < 3; ++k)
            r.h[i][k] = a.h[i][k] * b.v + a.g[i] * b.g[k] + a.g[k] * b.g[i] + a.v * b.h[i][k];
    }
    return r;
}

// φ(a) given φ, φ', φ'' at a.v
Jet chain(const Jet& a, double f0, double f1, double f2) {
    Jet r;
    r.v = f0;
    for (int i = 0; i < 3; ++i) {
        r.g[i] = f1 * a.g[i];
        for (int k = 0; k < 3; ++k) r.h[i][k] = f1 * a.h[i][k] + f2 * a.g[i] * a.g[k];
    }
    return r;
}

Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

std::vector<Jet> trig_components(TrigField f, const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != trig_field_dim(f)) throw DomainError("point has wrong dimension");
    Jet x = Jet::var(0, p[0]), y = Jet::var(1, p[1]);
    switch (f) {
        case TrigField::T_tetra: {
            Jet z = Jet::var(2, p[2]);
            return {z * sin(y) + y * sin(z) + x * cos(y) - x * cos(z),
                    x * sin(z) + z * sin(x) + y * cos(z) - y * cos(x),
                    y * sin(x) + x * sin(y) + z * cos(x) - z * cos(y)};
        }
        case TrigField::O_octa: {
            Jet z = Jet::var(2, p[2]);
            return {y * sin(z) - z * sin(y) + x * cos(y) - 2.0 * sin(x) + x * cos(z),
                    z * sin(x) - x * sin(z) + y * cos(z) - 2.0 * sin(y) + y * cos(x),
                    x * sin(y) - y * sin(x) + z * cos(x) - 2.0 * sin(z) + z * cos(y)};
        }
        case TrigField::D_dihedral: {
            const double r3 = std::sqrt(3.0);
            return {Jet::constant(0) - cos(y) + r3 * (sin(0.5 * x) * sin((r3 / 2) * y)) +
                        cos((r3 / 2) * x) * cos(0.5 * y),
                    Jet::constant(0) - cos(x) + r3 * (sin(0.5 * y) * sin((r3 / 2) * x)) +
                        cos((r3 / 2) * y) * cos(0.5 * x)};
        }
    }
    return {};
}

}  // namespace

TrigField parse_trig_field(const std::string& id) {
    if (id == "T_tetra") return TrigField::T_tetra;
    if (id == "O_octa") return TrigField::O_octa;
    if (id == "D_dihedral") return TrigField::D_dihedral;
    throw DomainError("unknown trigonometric field '" + id + "'");
}

std::string to_string(TrigField f) {
    switch (f) {
        case TrigField::T_tetra: return "T_tetra";
        case TrigField::O_octa: return "O_octa";
        case TrigField::D_dihedral: return "D_dihedral";
    }
    return "?";
}

int trig_field_dim(TrigField f) { return f == TrigField::D_dihedral ? 2 : 3; }

TrigJet trig_field_jet(TrigField f, const std::vector<double>& point) {
    TrigJet out;
    for (const Jet& j : trig_components(f, point)) {
        out.value.push_back(j.v);
        out.gradient.push_back(j.g);
        out.hessian.push_back(j.h);
    }
    return out;
}

BeltramiReport beltrami_probe(TrigField f, int points, unsigned seed) {
    if (points < 1) throw DomainError("need at least one sample point");
    int n = trig_field_dim(f);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    BeltramiReport rep;
    rep.field = f;
    rep.points = points;
    if (n == 3) rep.max_curl_deviation = 0.0;
    for (int s = 0; s < points; ++s) {
        std::vector<double> p(n);
        for (auto& c : p) c = dist(rng);
        TrigJet j = trig_field_jet(f, p);
        double div = 0, helm = 0;
        for (int i = 0; i < n; ++i) {
            div += j.gradient[i][i];
            double lap = 0;
            for (int k = 0; k < n; ++k) lap += j.hessian[i][k][k];
            helm += (lap + j.value[i]) * (lap + j.value[i]);
        }
        rep.max_divergence = std::max(rep.max_divergence, std::abs(div));
        rep.max_helmholtz_deviation = std::max(rep.max_helmholtz_deviation, std::sqrt(helm));
        if (n == 3) {
            const auto& g = j.gradient;
            double c[3] = {g[2][1] - g[1][2], g[0][2] - g[2][0], g[1][0] - g[0][1]};
            double dev = std::hypot(c[0] - j.value[0], c[1] - j.value[1], c[2] - j.value[2]);
            rep.max_curl_deviation = std::max(*rep.max_curl_deviation, dev);
        }
    }
    return rep;
}

}  // namespace superflow

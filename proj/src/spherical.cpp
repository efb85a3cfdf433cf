#include "superflow/spherical.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_poly.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

#include "superflow/errors.hpp"
#include "superflow/parallel.hpp"

namespace superflow {

namespace {

using Vec3 = std::array<double, 3>;

// GSL reports failures through return codes here, never by aborting
[[maybe_unused]] const bool gsl_quiet = [] {
    gsl_set_error_handler_off();
    return true;
}();

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 normalized(const Vec3& a) { return (1 / norm(a)) * a; }

// Orthonormal tangent basis at a unit vector.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& x) {
    Vec3 t = std::abs(x[0]) < 0.6 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 e1 = normalized(t - dot(t, x) * x);
    return {e1, cross(x, e1)};
}

// Dense double evaluation of a three-variable polynomial.
class DPoly {
public:
    DPoly() = default;
    explicit DPoly(const MPoly& p) {
        for (const auto& [m, c] : p.terms()) {
            terms_.push_back({to_double(c), {m.e[0], m.e[1], m.e[2]}});
            for (int i = 0; i < 3; ++i) deg_ = std::max(deg_, m.e[i]);
        }
    }
    double operator()(const Vec3& x) const {
        double pw[3][32];
        for (int i = 0; i < 3; ++i) {
            pw[i][0] = 1;
            for (int k = 1; k <= deg_; ++k) pw[i][k] = pw[i][k - 1] * x[i];
        }
        double s = 0;
        for (const auto& t : terms_) s += t.c * pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]];
        return s;
    }

private:
    struct Term {
        double c;
        std::array<int, 3> e;
    };
    std::vector<Term> terms_;
    int deg_ = 0;
};

MPoly scaled(const MPoly& p, const Rat& r) {
    MPoly out(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        Rat f = 1;
        for (int k = 0; k < m.total(); ++k) f *= r;
        out.add_term(m, c * f);
    }
    return out;
}

std::vector<MPoly> sphere_components(const VectorField& v) {
    if (v.dim() != 3) throw DomainError("spherical operations need a field on R³");
    if (!v.is_polynomial()) throw DomainError("spherical operations need polynomial components");
    return v.polynomial_components();
}

// Value, gradient and Hessian of a polynomial, evaluated from exact derivatives.
struct Jet2 {
    DPoly f;
    std::array<DPoly, 3> g;
    std::array<std::array<DPoly, 3>, 3> h;
    explicit Jet2(const MPoly& p) : f(p) {
        for (int i = 0; i < 3; ++i) {
            MPoly di = p.derivative(i);
            g[i] = DPoly(di);
            for (int j = 0; j < 3; ++j) h[i][j] = DPoly(di.derivative(j));
        }
    }
};

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> out;
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = 1 - (2 * i + 1.0) / n, r = std::sqrt(1 - z * z), phi = golden * i;
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

//--- adaptive cubature on spherical triangles --------------------------------------

// Radon's degree-5 seven-point rule on a triangle (barycentric points, weights summing to 1).
struct RulePoint {
    double l1, l2, l3, w;
};

const std::array<RulePoint, 7>& radon_rule() {
    static const std::array<RulePoint, 7> rule = [] {
        const double s = std::sqrt(15.0);
        const double a = (6 - s) / 21, b = (6 + s) / 21;
        const double wa = (155 - s) / 1200, wb = (155 + s) / 1200;
        return std::array<RulePoint, 7>{{{1.0 / 3, 1.0 / 3, 1.0 / 3, 9.0 / 40},
                                         {a, a, 1 - 2 * a, wa},
                                         {a, 1 - 2 * a, a, wa},
                                         {1 - 2 * a, a, a, wa},
                                         {b, b, 1 - 2 * b, wb},
                                         {b, 1 - 2 * b, b, wb},
                                         {1 - 2 * b, b, b, wb}}};
    }();
    return rule;
}

struct Tri {
    Vec3 a, b, c;
};

using SphereFn = std::function<double(const Vec3&)>;

// Integral over the radial projection of a planar triangle onto S².
double tri_rule(const SphereFn& f, const Tri& t) {
    Vec3 n = cross(t.b - t.a, t.c - t.a);
    double area2 = norm(n);
    Vec3 un = (1 / area2) * n;
    double s = 0;
    for (const auto& q : radon_rule()) {
        Vec3 p = q.l1 * t.a + q.l2 * t.b + q.l3 * t.c;
        double r = norm(p);
        s += q.w * f((1 / r) * p) * std::abs(dot(p, un)) / (r * r * r);
    }
    return 0.5 * area2 * s;
}

std::array<Tri, 4> split(const Tri& t) {
    Vec3 ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
    return {Tri{t.a, ab, ca}, Tri{ab, t.b, bc}, Tri{ca, bc, t.c}, Tri{ab, bc, ca}};
}

struct Node {
    Tri tri;
    double fine = 0, err = 0;
    std::array<double, 4> child{};
};

Node make_node(const SphereFn& f, const Tri& t) {
    Node n{t};
    auto kids = split(t);
    for (int i = 0; i < 4; ++i) n.child[i] = tri_rule(f, kids[i]);
    n.fine = n.child[0] + n.child[1] + n.child[2] + n.child[3];
    n.err = std::abs(n.fine - tri_rule(f, t));
    return n;
}

struct TileResult {
    double value = 0, error = 0;
    std::size_t count = 0;
    bool exhausted = false;
};

TileResult integrate_tile(const SphereFn& f, const Tri& base, double tol, std::size_t cap) {
    auto cmp = [](const Node& x, const Node& y) { return x.err < y.err; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    heap.push(make_node(f, base));
    double err = heap.top().err;
    std::size_t count = 1;
    while (err > tol) {
        if (count + 3 > cap) return {0, err, count, true};
        Node top = heap.top();
        heap.pop();
        err -= top.err;
        for (const Tri& k : split(top.tri)) {
            Node n = make_node(f, k);
            err += n.err;
            heap.push(std::move(n));
        }
        count += 3;
        // the running sum drifts; resynchronise when it claims convergence
        if (err <= tol) {
            err = 0;
            auto copy = heap;
            while (!copy.empty()) {
                err += copy.top().err;
                copy.pop();
            }
        }
    }
    TileResult r;
    r.count = count;
    std::vector<Node> leaves;
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    for (const auto& n : leaves) {
        r.value += n.fine;
        r.error += n.err;
    }
    return r;
}

// Octahedron faces in a fixed generic orientation, so that rule points avoid the
// coordinate-aligned special points of symmetric fields.
std::array<Tri, 8> base_tiles() {
    const double a = 0.3711, b = 1.1213, c = 2.4512;
    auto rot = [](int i, double t, const Vec3& v) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        Vec3 w = v;
        w[j] = std::cos(t) * v[j] - std::sin(t) * v[k];
        w[k] = std::sin(t) * v[j] + std::cos(t) * v[k];
        return w;
    };
    auto R = [&](const Vec3& v) { return rot(2, c, rot(0, b, rot(2, a, v))); };
    std::array<Tri, 8> out;
    int idx = 0;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                Vec3 X = R({double(sx), 0, 0}), Y = R({0, double(sy), 0}), Z = R({0, 0, double(sz)});
                out[idx++] = Tri{X, Y, Z};
            }
    return out;
}

//--- circle helpers ----------------------------------------------------------------

double cubic_form(const std::array<double, 4>& f, double x, double y) {
    return ((f[0] * x + f[1] * y) * x + f[2] * y * y) * x + f[3] * y * y * y;
}

// Angle of the maximum of |F| on the unit circle and the maximum value F².
std::pair<double, double> circle_argmax(const std::array<double, 4>& f) {
    auto [a, b, c, d] = f;
    // dF/dθ = −y F_x + x F_y = b x³ + (2c−3a) x²y + (3d−2b) xy² − c y³; roots t = y/x.
    std::array<double, 4> h{b, 2 * c - 3 * a, 3 * d - 2 * b, -c};
    auto hval = [&](double t) { return ((h[3] * t + h[2]) * t + h[1]) * t + h[0]; };
    auto hder = [&](double t) { return (3 * h[3] * t + 2 * h[2]) * t + h[1]; };
    std::vector<double> cand{0.0, std::numbers::pi / 2};
    double scale = std::max({std::abs(h[0]), std::abs(h[1]), std::abs(h[2]), std::abs(h[3])});
    int deg = 3;
    while (deg > 0 && std::abs(h[deg]) <= 1e-14 * scale) --deg;
    if (deg > 0 && scale > 0) {
        std::vector<double> z(2 * deg);
        gsl_poly_complex_workspace* w = gsl_poly_complex_workspace_alloc(deg + 1);
        int st = gsl_poly_complex_solve(h.data(), deg + 1, w, z.data());
        gsl_poly_complex_workspace_free(w);
        if (st == GSL_SUCCESS)
            for (int i = 0; i < deg; ++i) {
                double t = z[2 * i], im = z[2 * i + 1];
                if (std::abs(im) > 1e-6 * (1 + std::abs(t))) continue;
                for (int it = 0; it < 4; ++it) {
                    double dv = hder(t);
                    if (dv == 0) break;
                    t -= hval(t) / dv;
                }
                cand.push_back(std::atan(t));
            }
    }
    for (int i = 0; i < 64; ++i) cand.push_back(std::numbers::pi * i / 64);
    double best = -1, arg = 0;
    for (double th : cand) {
        double v = cubic_form(f, std::cos(th), std::sin(th));
        if (v * v > best) {
            best = v * v;
            arg = v >= 0 ? th : th + std::numbers::pi;
        }
    }
    return {arg, best};
}

double beta2(const std::array<double, 4>& f) {
    auto [a, b, c, d] = f;
    return (5 * a * a + b * b + c * c + 5 * d * d + 2 * a * c + 2 * b * d) / 16;
}

// F(x cosθ − y sinθ, x sinθ + y cosθ), so that the new (1,0) is the old direction θ.
std::array<double, 4> rotate_form(const std::array<double, 4>& f, double th) {
    const double cs = std::cos(th), sn = std::sin(th);
    // linear forms u = cs·x − sn·y, v = sn·x + cs·y as coefficient pairs in (x, y)
    using Q = std::array<double, 4>;
    auto mul = [](const std::vector<double>& p, double px, double py) {
        std::vector<double> r(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            r[i] += p[i] * px;
            r[i + 1] += p[i] * py;
        }
        return r;
    };
    Q out{};
    for (int k = 0; k < 4; ++k) {
        // x-power 3−k, y-power k of the original: u^{3−k} v^k
        std::vector<double> p{1.0};
        for (int i = 0; i < 3 - k; ++i) p = mul(p, cs, -sn);
        for (int i = 0; i < k; ++i) p = mul(p, sn, cs);
        for (int j = 0; j < 4; ++j) out[j] += f[k] * p[j];
    }
    return out;
}

// Nelder–Mead (GSL nmsimplex2) minimisation.
std::pair<std::vector<double>, double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                                   std::vector<double> x0, double step) {
    const std::size_t n = x0.size();
    gsl_multimin_function fn;
    fn.n = n;
    fn.params = const_cast<void*>(static_cast<const void*>(&f));
    fn.f = [](const gsl_vector* v, void* p) {
        const auto& g = *static_cast<const std::function<double(const std::vector<double>&)>*>(p);
        std::vector<double> x(v->size);
        for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
        double r = g(x);
        return std::isfinite(r) ? r : 1e300;
    };
    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* ss = gsl_vector_alloc(n);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x, i, x0[i]);
        gsl_vector_set(ss, i, step);
    }
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);
    for (int it = 0; it < 4000; ++it) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
    }
    std::vector<double> best(n);
    for (std::size_t i = 0; i < n; ++i) best[i] = gsl_vector_get(s->x, i);
    double val = s->fval;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(x);
    gsl_vector_free(ss);
    return {best, val};
}

// Newton's method on G(u) = 0 with a central-difference Jacobian.
std::vector<double> newton_solve(const std::function<std::vector<double>(const std::vector<double>&)>& G,
                                 std::vector<double> u) {
    const std::size_t n = u.size();
    for (int it = 0; it < 50; ++it) {
        std::vector<double> g = G(u);
        double gn = 0;
        for (double v : g) gn = std::max(gn, std::abs(v));
        if (gn < 1e-15) break;
        std::vector<std::vector<double>> J(n, std::vector<double>(n + 1));
        for (std::size_t j = 0; j < n; ++j) {
            double h = 1e-6 * std::max(1.0, std::abs(u[j]));
            auto up = u, um = u;
            up[j] += h;
            um[j] -= h;
            auto gp = G(up), gm = G(um);
            for (std::size_t i = 0; i < n; ++i) J[i][j] = (gp[i] - gm[i]) / (2 * h);
        }
        for (std::size_t i = 0; i < n; ++i) J[i][n] = -g[i];
        // Gaussian elimination with partial pivoting
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < n; ++r)
                if (std::abs(J[r][c]) > std::abs(J[p][c])) p = r;
            std::swap(J[c], J[p]);
            if (J[c][c] == 0) throw NumericError("singular Jacobian in stationarity polish");
            for (std::size_t r = c + 1; r < n; ++r) {
                double m = J[r][c] / J[c][c];
                for (std::size_t k = c; k <= n; ++k) J[r][k] -= m * J[c][k];
            }
        }
        std::vector<double> s(n);
        for (std::size_t c = n; c-- > 0;) {
            double acc = J[c][n];
            for (std::size_t k = c + 1; k < n; ++k) acc -= J[c][k] * s[k];
            s[c] = acc / J[c][c];
        }
        double sn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += s[i];
            sn = std::max(sn, std::abs(s[i]));
        }
        if (sn < 1e-16) break;
    }
    return u;
}

}  // namespace

//--- sphere moments -----------------------------------------------------------------------

Rat sphere_monomial_average(std::span<const int> exponents) {
    const int n = static_cast<int>(exponents.size());
    if (n == 0) throw DomainError("sphere average needs at least one variable");
    Rat num = 1;
    int total = 0;
    for (int a : exponents) {
        if (a < 0) throw DomainError("negative exponent");
        if (a % 2) return Rat(0);
        for (int k = a - 1; k > 1; k -= 2) num *= k;
        total += a;
    }
    Rat den = 1;
    for (int k = 0; 2 * k < total; ++k) den *= n + 2 * k;
    return num / den;
}

Rat sphere_average(const MPoly& p, const Rat& radius) {
    Rat s = 0;
    std::vector<int> e(p.nvars());
    for (const auto& [m, c] : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i) e[i] = m.e[i];
        Rat avg = sphere_monomial_average(e);
        if (avg == 0) continue;
        for (int k = 0; k < m.total(); ++k) avg *= radius;
        s += c * avg;
    }
    return s;
}

//--- surface averages --------------------------------------------------------------------

SphereMean sphere_mean(const SphereFn& f, double tol, std::size_t max_triangles) {
    if (!(tol > 0)) throw DomainError("quadrature tolerance must be positive");
    auto tiles = base_tiles();
    const double tile_tol = tol * 4 * std::numbers::pi / tiles.size();
    const std::size_t tile_cap = std::max<std::size_t>(16, max_triangles / tiles.size());
    std::array<TileResult, 8> res;
    parallel_for(tiles.size(), [&](std::size_t i) { res[i] = integrate_tile(f, tiles[i], tile_tol, tile_cap); });
    SphereMean out;
    for (const auto& r : res) {
        if (r.exhausted) throw NumericError("sphere quadrature exceeded its triangle budget");
        out.mean += r.value;
        out.error += r.error;
        out.triangles += r.count;
    }
    out.mean /= 4 * std::numbers::pi;
    out.error /= 4 * std::numbers::pi;
    return out;
}

SphericalConstants spherical_constants(const VectorField& v, const SphereOptions& opts) {
    if (!(opts.radius > 0)) throw DomainError("sphere radius must be positive");
    std::vector<MPoly> comps = sphere_components(v);
    for (auto& c : comps) c = scaled(c, opts.radius);
    MPoly g2(3);
    for (const auto& c : comps) g2 += c * c;

    SphericalConstants out;
    out.alpha2_exact = sphere_average(g2);
    out.alpha2 = to_double(out.alpha2_exact);
    if (g2.is_zero()) {
        out.method0 = "undefined";
        return out;
    }

    std::array<DPoly, 3> dv{DPoly(comps[0]), DPoly(comps[1]), DPoly(comps[2])};
    auto length = [&](const Vec3& x) { return std::hypot(dv[0](x), dv[1](x), dv[2](x)); };
    SphereMean m1 = sphere_mean(length, opts.tol, opts.max_triangles);
    SphereMean m0 = sphere_mean([&](const Vec3& x) { return std::log(length(x)); }, opts.tol, opts.max_triangles);
    out.alpha1 = m1.mean;
    out.error1 = m1.error;
    out.alpha0 = std::exp(m0.mean);
    out.error0 = m0.error;
    out.triangles = m0.triangles + m1.triangles;

    // maximum of |V|² on the sphere: best seeds, then Riemannian Newton ascent
    Jet2 jet(g2);
    std::vector<Vec3> seeds = fibonacci_sphere(std::max(opts.seeds, 16));
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < static_cast<int>(seeds.size()); ++i) ranked.push_back({-jet.f(seeds[i]), i});
    std::sort(ranked.begin(), ranked.end());
    const std::size_t starts = std::min<std::size_t>(32, ranked.size());
    std::vector<std::pair<double, Vec3>> found(starts);
    parallel_for(starts, [&](std::size_t s) {
        Vec3 x = seeds[ranked[s].second];
        double fx = jet.f(x);
        for (int it = 0; it < 100; ++it) {
            auto [e1, e2] = tangent_basis(x);
            Vec3 g{jet.g[0](x), jet.g[1](x), jet.g[2](x)};
            double H[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) H[i][j] = jet.h[i][j](x);
            auto quad = [&](const Vec3& p, const Vec3& q) {
                double r = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) r += p[i] * H[i][j] * q[j];
                return r;
            };
            double radial = dot(x, g);
            double g1 = dot(e1, g), g2t = dot(e2, g);
            double h11 = quad(e1, e1) - radial, h12 = quad(e1, e2), h22 = quad(e2, e2) - radial;
            if (std::hypot(g1, g2t) < 1e-15 * std::max(1.0, std::abs(fx))) break;
            double det = h11 * h22 - h12 * h12, s1, s2;
            if (h11 < 0 && det > 0) {
                s1 = -(h22 * g1 - h12 * g2t) / det;
                s2 = -(-h12 * g1 + h11 * g2t) / det;
            } else {
                double scale = 0.1 / std::max(1e-300, std::hypot(g1, g2t));
                s1 = scale * g1;
                s2 = scale * g2t;
            }
            for (int back = 0; back < 40; ++back) {
                Vec3 y = normalized(x + s1 * e1 + s2 * e2);
                double fy = jet.f(y);
                if (fy >= fx) {
                    x = y;
                    fx = fy;
                    break;
                }
                s1 /= 2;
                s2 /= 2;
            }
            if (std::hypot(s1, s2) < 1e-16) break;
        }
        found[s] = {fx, x};
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < starts; ++s)
        if (found[s].first > found[best].first) best = s;
    out.alpha_inf = std::sqrt(found[best].first);
    out.argmax = found[best].second;

    if (out.alpha2 > 0) {
        out.omega0 = *out.alpha0 * *out.alpha0 / out.alpha2;
        out.omega1 = out.alpha1 * out.alpha1 / out.alpha2;
        out.omega_inf = out.alpha_inf * out.alpha_inf / out.alpha2;
    }
    return out;
}

//--- vanish points ------------------------------------------------------------------------

std::vector<std::array<double, 3>> sphere_zeros(const VectorField& v, int seeds) {
    std::vector<MPoly> comps = sphere_components(v);
    MPoly radial(3);
    for (int i = 0; i < 3; ++i) radial += MPoly::var(3, i) * comps[i];
    if (!radial.is_zero()) throw DomainError("field is not tangent to spheres");
    if (seeds < 1) throw DomainError("need at least one seed");

    std::array<DPoly, 3> f;
    std::array<std::array<DPoly, 3>, 3> df;
    for (int i = 0; i < 3; ++i) {
        f[i] = DPoly(comps[i]);
        for (int j = 0; j < 3; ++j) df[i][j] = DPoly(comps[i].derivative(j));
    }
    auto value = [&](const Vec3& x) { return Vec3{f[0](x), f[1](x), f[2](x)}; };
    std::vector<Vec3> start = fibonacci_sphere(seeds);
    double vscale = 0;
    for (const auto& x : start) vscale = std::max(vscale, norm(value(x)));
    if (vscale == 0) throw DomainError("the zero field vanishes everywhere");

    std::vector<std::optional<Vec3>> hit(start.size());
    parallel_for(start.size(), [&](std::size_t s) {
        Vec3 x = start[s];
        for (int it = 0; it < 100; ++it) {
            Vec3 fx = value(x);
            if (norm(fx) <= 1e-13 * vscale) {
                hit[s] = x;
                return;
            }
            auto [e1, e2] = tangent_basis(x);
            double D[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) D[i][j] = df[i][j](x);
            auto along = [&](const Vec3& e) {
                return Vec3{dot(Vec3{D[0][0], D[0][1], D[0][2]}, e), dot(Vec3{D[1][0], D[1][1], D[1][2]}, e),
                            dot(Vec3{D[2][0], D[2][1], D[2][2]}, e)};
            };
            Vec3 d1 = along(e1), d2 = along(e2);
            double j11 = dot(e1, d1), j12 = dot(e1, d2), j21 = dot(e2, d1), j22 = dot(e2, d2);
            double r1 = dot(e1, fx), r2 = dot(e2, fx);
            double det = j11 * j22 - j12 * j21;
            if (det == 0) return;
            double s1 = -(j22 * r1 - j12 * r2) / det, s2 = -(-j21 * r1 + j11 * r2) / det;
            double len = std::hypot(s1, s2);
            if (len > 0.2) {
                s1 *= 0.2 / len;
                s2 *= 0.2 / len;
            }
            x = normalized(x + s1 * e1 + s2 * e2);
        }
    });

    std::vector<Vec3> zeros;
    std::size_t failed = 0;
    for (const auto& h : hit) {
        if (!h) {
            ++failed;
            continue;
        }
        bool known = false;
        for (const auto& z : zeros)
            if (norm(z - *h) < 1e-7) {
                known = true;
                break;
            }
        if (!known) zeros.push_back(*h);
    }
    if (2 * failed > start.size()) throw NumericError("zero search exceeded its non-convergence budget");
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

int sphere_vanish_count(const VectorField& v, int seeds) { return static_cast<int>(sphere_zeros(v, seeds).size()); }

//--- the surface of the octahedral field -------------------------------------------------

MPoly surface_polynomial() {
    const MPoly X = MPoly::var(3, 0), Y = MPoly::var(3, 1), Z = MPoly::var(3, 2), one(3, Rat(1));
    auto cyc = [&](auto term) { return term(X, Y, Z) + term(Y, Z, X) + term(Z, X, Y); };
    auto k = [](long c) { return Rat(c); };
    MPoly e = cyc([](const MPoly& x, const MPoly& y, const MPoly& z) { return x.pow(12) * (y * y + z * z).pow(2); });
    e += cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return k(9) * x.pow(11) * y * z * (y * y - z * z);
    });
    e += cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return x.pow(10) * (k(44) * z * z * y.pow(4) + k(44) * z.pow(4) * y * y + k(12) * z * z * y * y -
                            k(4) * y.pow(6) - k(4) * z.pow(6));
    });
    e -= cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return x.pow(9) * y * z * (y * y - z * z) * (k(18) * y * y + k(18) * z * z + one);
    });
    e += cyc([&](const MPoly&, const MPoly& y, const MPoly& z) { return k(6) * y.pow(8) * z.pow(8); });
    e += cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return k(2) * x.pow(8) * y * y * z * z *
               (k(340) * y * y * z * z - k(23) * y.pow(4) - k(23) * z.pow(4) - k(18) * y * y - k(18) * z * z);
    });
    e += cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return k(3) * x.pow(7) * y * z * (y * y - z * z) * (y * y + z * z - k(90) * y * y * z * z);
    });
    e += cyc([&](const MPoly& x, const MPoly& y, const MPoly& z) {
        return k(48) * x * x * y.pow(6) * z.pow(6) + k(1050) * x.pow(4) * z.pow(6) * y.pow(6) +
               k(12) * x.pow(6) * y.pow(4) * z.pow(4);
    });
    return e;
}

bool surface_identity_check(const MPoly& e) {
    if (e.nvars() != 3) throw DomainError("surface polynomial must be in three variables");
    const MPoly x = MPoly::var(3, 0), y = MPoly::var(3, 1), z = MPoly::var(3, 2);
    std::vector<MPoly> images{y * z * (y * y - z * z), x * z * (z * z - x * x), x * y * (x * x - y * y)};
    return reduce_mod_sphere(substitute(e, images)).is_zero();
}

//--- extremal ratios on the circle -------------------------------------------------------

Rat circle_beta2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    const MPoly x = MPoly::var(2, 0), y = MPoly::var(2, 1);
    MPoly f = a * x.pow(3) + b * x * x * y + c * x * y * y + d * y.pow(3);
    return sphere_average(f * f);
}

double circle_beta_inf(const std::array<double, 4>& f) { return std::sqrt(circle_argmax(f).second); }

double extremal_ratio(const std::array<double, 4>& f) {
    double b2 = beta2(f);
    if (!(b2 > 0)) throw DomainError("extremal ratio of the zero form");
    return circle_argmax(f).second / b2;
}

ExtremalResult extremal_ratio_2_4(ExtremalMode mode, int starts) {
    if (starts < 1) throw DomainError("need at least one start");
    const double sign = mode == ExtremalMode::min ? 1 : -1;
    // charts after the rotation gauge b = 0: d = 1 with (a, c) free, and d = 0 with a = 1
    using Obj = std::function<double(const std::vector<double>&)>;
    Obj chart1 = [&](const std::vector<double>& p) { return sign * extremal_ratio({p[0], 0, p[1], 1}); };
    Obj chart0 = [&](const std::vector<double>& p) { return sign * extremal_ratio({1, 0, p[0], 0}); };
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> nd(0, 2);
    std::vector<std::vector<double>> x0(2 * starts);
    for (int s = 0; s < starts; ++s) {
        x0[2 * s] = {nd(rng), nd(rng)};
        x0[2 * s + 1] = {nd(rng)};
    }
    std::vector<std::pair<double, std::array<double, 4>>> runs(x0.size());
    parallel_for(x0.size(), [&](std::size_t i) {
        if (i % 2 == 0) {
            auto [p, v] = nelder_mead(chart1, x0[i], 0.5);
            runs[i] = {v, {p[0], 0, p[1], 1}};
        } else {
            auto [p, v] = nelder_mead(chart0, x0[i], 0.5);
            runs[i] = {v, {1, 0, p[0], 0}};
        }
    });
    std::size_t bi = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].first < runs[bi].first) bi = i;

    ExtremalResult out;
    out.mode = mode;
    out.search_value = sign * runs[bi].first;

    // move the maximum of |F| to (1,0); then b = 0 and β_∞ = a
    std::array<double, 4> f = runs[bi].second;
    f = rotate_form(f, circle_argmax(f).first);
    f[1] = 0;
    const double lead = f[0];
    for (double& c : f) c /= lead;

    auto g = [](double a, double c, double d) { return 16 * a * a / (5 * a * a + c * c + 5 * d * d + 2 * a * c); };
    if (mode == ExtremalMode::max) {
        // stationary point of 16/(5 + c² + 5d² + 2c) in (c, d)
        auto grad = [&](const std::vector<double>& u) {
            double q = 5 + u[0] * u[0] + 5 * u[1] * u[1] + 2 * u[0];
            return std::vector<double>{-16 * (2 * u[0] + 2) / (q * q), -160 * u[1] / (q * q)};
        };
        std::vector<double> u = newton_solve(grad, {f[2], f[3]});
        auto r = grad(u);
        out.optimizer = {1, 0, u[0], u[1]};
        out.certificate = std::hypot(r[0], r[1]);
    } else {
        // d = 1 chart; reflect y → −y so that d > 0, then scale
        if (std::abs(f[3]) < 1e-9) throw NumericError("minimiser fell on the d = 0 boundary");
        double a = f[0] / f[3], c = f[2] / f[3];
        if (f[3] < 0) a = -a, c = -c;
        if (a < 0) a = -a, c = -c;
        // stationarity of g(a, c, 1) on 27a³ − 27a − 9ac² − 2c³ = 0 by Lagrange multipliers
        auto parts = [&](double A, double C) {
            double q = 5 * A * A + C * C + 5 + 2 * A * C;
            double ga = (32 * A * q - 16 * A * A * (10 * A + 2 * C)) / (q * q);
            double gc = -16 * A * A * (2 * C + 2 * A) / (q * q);
            double h = 27 * A * A * A - 27 * A - 9 * A * C * C - 2 * C * C * C;
            double ha = 81 * A * A - 27 - 9 * C * C, hc = -18 * A * C - 6 * C * C;
            return std::array<double, 5>{ga, gc, h, ha, hc};
        };
        auto system = [&](const std::vector<double>& u) {
            auto p = parts(u[0], u[1]);
            return std::vector<double>{p[0] - u[2] * p[3], p[1] - u[2] * p[4], p[2]};
        };
        auto p0 = parts(a, c);
        double mu0 = (p0[0] * p0[3] + p0[1] * p0[4]) / (p0[3] * p0[3] + p0[4] * p0[4]);
        std::vector<double> u = newton_solve(system, {a, c, mu0});
        auto p = parts(u[0], u[1]);
        double mu = (p[0] * p[3] + p[1] * p[4]) / (p[3] * p[3] + p[4] * p[4]);
        out.optimizer = {u[0], 0, u[1], 1};
        out.certificate = std::hypot(p[0] - mu * p[3], p[1] - mu * p[4], p[2]);
    }
    out.value = extremal_ratio(out.optimizer);
    auto [A, B, C, D] = out.optimizer;
    (void)B;
    if (std::abs(out.value - g(A, C, D)) > 1e-9 * out.value)
        throw NumericError("polished extremal form does not attain its maximum at (1,0)");
    return out;
}

}  // namespace superflow

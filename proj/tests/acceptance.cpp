// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "superflow/closedform.hpp"
#include "superflow/elliptic.hpp"
#include "superflow/errors.hpp"
#include "superflow/firstint.hpp"
#include "superflow/flows.hpp"
#include "superflow/groups.hpp"
#include "superflow/hyperoct.hpp"
#include "superflow/reynolds.hpp"
#include "superflow/series.hpp"
#include "superflow/spherical.hpp"

using namespace superflow;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

MPoly P(const char* s) { return parse_poly(s, kXYZ); }

VectorField F(std::initializer_list<const char*> comps) {
    std::vector<MPoly> v;
    for (auto c : comps) v.push_back(P(c));
    return VectorField(v);
}

Series rats(std::initializer_list<const char*> xs) {
    Series r;
    for (const char* s : xs) r.push_back(parse_rat(s));
    return r;
}

// Collects failed sub-checks of one criterion.
struct Probe {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int run(int id, const char* title, const std::function<void(Probe&)>& body) {
    Probe p;
    auto start = std::chrono::steady_clock::now();
    try {
        body(p);
    } catch (const std::exception& e) {
        p.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = p.failures.empty();
    std::printf("[%s] %2d %s (%.1f s)", ok ? "PASS" : "FAIL", id, title, secs);
    for (const auto& n : p.notes) std::printf("; %s", n.c_str());
    for (const auto& f : p.failures) std::printf("; failed: %s", f.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return ok ? 0 : 1;
}

RatMatrix rational_rotation(const Rat& p, const Rat& q, const Rat& r) {
    RatMatrix a(3, 3);
    a(0, 1) = p, a(1, 0) = -p;
    a(0, 2) = q, a(2, 0) = -q;
    a(1, 2) = r, a(2, 1) = -r;
    RatMatrix i = RatMatrix::identity(3), minus = i, plus = i;
    for (int u = 0; u < 3; ++u)
        for (int w = 0; w < 3; ++w) {
            minus(u, w) -= a(u, w);
            plus(u, w) += a(u, w);
        }
    return minus * inverse(plus);
}

const VectorField kTetra = F({"y*z", "x*z", "x*y"});
const VectorField kOctaNum = F({"y^3*z - y*z^3", "z^3*x - z*x^3", "x^3*y - x*y^3"});

//--- criteria ----------------------------------------------------------------------------

void group_orders(Probe& p) {
    std::vector<std::pair<std::string, int>> cases{{"That", 24},        {"O", 24},          {"Ohat", 48},
                                                   {"Sn1(4)", 120},      {"hyperoct(5)", 1920}, {"hyperoct_full(5)", 3840},
                                                   {"icosa", 60}};
    for (const auto& [name, order] : cases) {
        FiniteGroup g = builtin_group(name);
        p.expect(g.order() == order, name + " has order " + std::to_string(g.order()));
    }
    p.expect(builtin_group("icosa").kind == GroupKind::approx, "icosa is not float-tagged");
}

void dimension_tables(Probe& p) {
    FiniteGroup th = builtin_group("That"), o = builtin_group("O");
    std::vector<int> sol, both;
    for (int ell = 2; ell <= 12; ell += 2) {
        int a = invariant_vf_basis(th, ell).dim(), b = invariant_vf_basis(o, ell).dim();
        p.expect(a == closed_form_dims("tetra_full", ell), "That at degree " + std::to_string(ell));
        p.expect(b == closed_form_dims("octa", ell), "O at degree " + std::to_string(ell));
        sol.push_back(solenoidal_and_sphere_dims(th, ell).solenoidal);
        both.push_back(solenoidal_and_sphere_dims(o, ell).both);
    }
    p.expect(sol == std::vector<int>{1, 1, 3, 4, 6, 8}, "solenoidal prefix");
    p.expect(both == std::vector<int>{0, 1, 2, 3, 4, 6}, "solenoidal sphere-tangent prefix");
}

void discovery(Probe& p) {
    SuperflowReport t = find_superflow(builtin_group("That"), SuperflowMode::polynomial, 8);
    p.expect(t.degree == 2 && t.unique && t.field && *t.field == kTetra, "tetrahedral field");

    SuperflowReport o = find_superflow(builtin_group("O"), SuperflowMode::projective, 8);
    p.expect(o.unique && o.field && o.field->numerators() == kOctaNum.numerators(), "octahedral numerators");
    p.expect(o.denominator && *o.denominator == P("x^2+y^2+z^2"), "octahedral denominator");

    SuperflowReport k = find_superflow(builtin_group("klein4"), SuperflowMode::polynomial, 8);
    p.expect(k.degree == 2 && k.dim == 3 && !k.unique, "klein4 not unique with dim 3");

    FiniteGroup h = builtin_group("hyperoct", 5);
    SuperflowReport hp = find_superflow(h, SuperflowMode::polynomial, 16);
    p.expect(hp.degree == 16 && hp.unique && hp.field && hp.field->degree() == 16, "hyperoct(5) polynomial degree 16");
    p.expect(hp.field && *hp.field == build_hyperoct_field(5), "hyperoct(5) field equals the explicit construction");
    SuperflowReport hq = find_superflow(h, SuperflowMode::projective, 16);
    p.expect(!hq.failure.empty() && hq.denominator_dim > 1 && !hq.denominator, "hyperoct(5) projective fails");
    p.note("hyperoct(5) projective: " + hq.failure);
}

bool in_span(const MPoly& w, const std::vector<MPoly>& basis) {
    std::map<Monomial, int, GrlexDesc> cols;
    auto all = basis;
    all.push_back(w);
    for (const auto& q : all)
        for (const auto& [m, c] : q.terms()) cols.try_emplace(m, 0);
    int width = 0;
    for (auto& [m, id] : cols) id = width++;
    auto rank_of = [&](const std::vector<MPoly>& ps) {
        RatMatrix mat(static_cast<int>(ps.size()), width);
        for (int i = 0; i < static_cast<int>(ps.size()); ++i)
            for (const auto& [m, c] : ps[i].terms()) mat(i, cols[m]) = c;
        return rank(mat);
    };
    return rank_of(all) == rank_of(basis);
}

void first_integrals(Probe& p) {
    IntegralBasis t2 = polynomial_first_integrals(kTetra, 2);
    p.expect(t2.dim() == 2 && in_span(P("x^2-y^2"), t2.basis) && in_span(P("x^2-z^2"), t2.basis), "tetrahedral quadrics");
    IntegralBasis o2 = polynomial_first_integrals(kOctaNum, 2);
    p.expect(o2.dim() == 1 && in_span(P("x^2+y^2+z^2"), o2.basis), "octahedral degree 2");
    IntegralBasis o4 = polynomial_first_integrals(kOctaNum, 4);
    p.expect(o4.dim() == 2 && in_span(P("x^4+y^4+z^4"), o4.basis), "octahedral degree 4");
    MPoly q1 = parse_poly("x1^2*(x2-x3)*(x2-x4)*(x3-x4)", {"x1", "x2", "x3", "x4"});
    p.expect(in_span(q1, polynomial_first_integrals(q_field(4), 5).basis), "symmetric-group quintic");
    VectorField jou = F({"y^2", "z^2", "x^2"});
    for (int d = 1; d <= 8; ++d)
        p.expect(polynomial_first_integrals(jou, d).dim() == 0, "Jouanolou degree " + std::to_string(d));
}

void taylor_fixtures(Probe& p) {
    Series u = rats({"0", "3", "2", "15/2", "41/3", "253/8", "3349/60", "5557/48", "555509/2520", "5934937/13440"});
    p.expect(ray_series(kTetra, std::vector<Rat>{3, 1, 2}, 9)[0] == u, "U(3t,t,2t) ray series");
    p.expect(tetra_U_series(10) == u, "U(3t,t,2t) closed form");
    Series trig = rats({"0", "5", "20", "205/2", "470", "17635/8", "20527/2", "765869/16", "6247769/28", "932089729/896"});
    p.expect(ray_series(kTetra, std::vector<Rat>{5, 4, 5}, 9)[0] == trig, "U(5t,4t,5t) ray series");
    p.expect(tetra_U_trig_series(10) == trig, "U(5t,4t,5t) closed form");

    Series v = rats({"0", "3", "3/7", "-51/98", "-10/7", "-671/2744", "2669/980", "12969121/4033680", "-49074611/19765032"});
    p.expect(ray_series(octa_field(), std::vector<Rat>{3, 2, 1}, 8)[0] == v, "V(3t,2t,t) through t^8");
    FlowSeries fs = taylor_projective(octa_field(), 5);
    Series head(v.begin() + 1, v.begin() + 6);
    p.expect(ray_coefficients(fs, 0, {3, 2, 1}) == head, "V(3t,2t,t) from the multivariate recurrence");

    Series g = rats({"1", "0", "1/18", "0", "-13/648", "0", "-53/19440", "0", "7663/4199040", "0", "76183/377913600"});
    p.expect(octa_generic_ratio_series(11) == g, "V(t sqrt2,t,0) closed form through t^10");
    SeriesMatchReport thm4 = verify_theorem("thm4", 10);
    p.expect(thm4.max_exact_mismatch == "0", "V(t sqrt2,t,0) against the flow series");

    auto [first, swap] = d5_gamma_series(8);
    p.expect(first == rats({"1", "-2", "8", "8", "-16", "-768/5", "2944/5", "84352/35", "-357632/35"}), "gamma first");
    Series s8(swap.begin(), swap.begin() + 8);
    p.expect(s8 == rats({"-1", "4", "-8", "-32", "160", "1216/5", "-13824/5", "-55808/35"}), "gamma swap");
    p.expect(ray_coefficients(taylor_projective(d5_field(), 9), 0, {1, -1}) == first, "gamma first from the flow series");

    const int order = 9;
    for (auto [n, m] : {std::pair{2, 3}, std::pair{3, 0}}) {
        FlowSeries s = taylor_projective(psi_field(n, m), order);
        Series bu = series_pow(Series{1, 1}, Rat(n - 1), order), bv = series_pow(Series{1, 1}, Rat(m - 1), order);
        for (int i = 0; i < order; ++i) {
            Monomial zi, zw;
            zi.e[2] = i;
            zw.e[2] = i + 1;
            bool ok = s.poly_term(0, i) == P("x") * MPoly::monomial(3, zi, bu[i]) &&
                      s.poly_term(1, i) == P("y") * MPoly::monomial(3, zi, bv[i]) &&
                      s.poly_term(2, i) == MPoly::monomial(3, zw, Rat(i % 2 ? -1 : 1));
            p.expect(ok, "psi(" + std::to_string(n) + "," + std::to_string(m) + ") term " + std::to_string(i));
        }
    }
}

void closed_forms(Probe& p) {
    for (const char* id : {"thm2", "thm-s4", "thm-spec", "thm4"}) {
        SeriesMatchReport r = verify_theorem(id, 10);
        p.expect(r.max_numeric_mismatch < 1e-10, std::string(id) + " numeric gap " + num(r.max_numeric_mismatch));
        p.expect(r.sample_t == std::vector<double>{0.01, 0.05, 0.1}, std::string(id) + " sample points");
        if (r.invariant_deviation)
            p.expect(*r.invariant_deviation < 1e-12, std::string(id) + " |J| deviation " + num(*r.invariant_deviation));
        p.expect(r.pass, std::string(id) + " report");
        p.note(std::string(id) + " gap " + num(r.max_numeric_mismatch));
    }
}

void special_constants(Probe& p) {
    const D5Context& d5 = d5_context();
    p.expect(std::abs(d5.Omega - 1.7162590512) < 1e-8, "Omega " + num(d5.Omega));
    p.expect(std::abs(d5.Xi - 2.4439543584) < 1e-8, "Xi");
    p.expect(std::abs(weierstrass_omega() - 2.1131881555) < 1e-9, "omega");
    Series sn = jacobi_sn_series(make_rat(5, 8), 12);
    Series odd = rats({"1", "-13/48", "649/7680", "-70837/2580480", "13141201/1486356480", "-339204983/118908518400"});
    for (int i = 0; i < 6; ++i) p.expect(sn[2 * i + 1] == odd[i] && sn[2 * i] == 0, "sn coefficient " + std::to_string(2 * i + 1));
    Series wp = weierstrass_laurent(10);
    Series wref = rats({"1", "0", "0", "0", "4/135", "0", "0", "0", "16/54675", "0", "0", "0", "128/95954625"});
    for (std::size_t i = 0; i < wref.size() && i < wp.size(); ++i) p.expect(wp[i] == wref[i], "Laurent index " + std::to_string(i));
    p.expect(wp.size() >= wref.size(), "Laurent length");
    double O = d5.Omega;
    std::vector<std::pair<double, double>> table{{0, 1}, {O, d5.xi[3]}, {2 * O, d5.xi[1]}, {3 * O, d5.xi[4]}, {4 * O, d5.xi[2]}};
    for (auto [t, ref] : table) {
        auto k = d5_k(t);
        p.expect(k && std::abs(*k - ref) < 1e-7, "k at " + num(t / O) + " Omega");
    }
    for (int j = 0; j < 5; ++j) p.expect(std::abs(d5.xi[j] - std::tan(M_PI / 4 + 2 * M_PI * j / 5)) < 1e-12, "root xi_j");
}

void spherical(Probe& p) {
    SphericalConstants c = spherical_constants(kOctaNum);
    p.expect(c.alpha2_exact == make_rat(4, 105), "alpha2 = " + to_string(c.alpha2_exact));
    double ref = (28945 + 2555 * std::sqrt(73.0)) / 24576;
    p.expect(c.omega_inf && std::abs(*c.omega_inf - ref) < 1e-9, "Omega_inf");
    p.expect(c.omega_inf && std::abs(*c.omega_inf - 2.066037173) < 1e-9, "Omega_inf decimal");
    p.expect(c.omega0 && c.omega1 && c.omega_inf && *c.omega0 < *c.omega1 && *c.omega1 < 1 && 1 < *c.omega_inf, "chain");
    SphericalConstants r = spherical_constants(conjugate_field(kOctaNum, rational_rotation(make_rat(1, 3), make_rat(1, 5), make_rat(2, 7))));
    p.expect(r.alpha2_exact == c.alpha2_exact, "rotated alpha2");
    double dev = std::max({std::abs(*r.omega0 - *c.omega0), std::abs(*r.omega1 - *c.omega1), std::abs(*r.omega_inf - *c.omega_inf)});
    p.expect(dev < 1e-9, "rotation deviation " + num(dev));
    p.note("Omega_0 " + num(*c.omega0) + ", Omega_1 " + num(*c.omega1) + ", rotation deviation " + num(dev));
}

void vanish_count(Probe& p) {
    int n = sphere_vanish_count(kOctaNum);
    p.expect(n == 26, "count " + std::to_string(n));
}

void surface(Probe& p) { p.expect(surface_identity_check(surface_polynomial()), "identity modulo the sphere"); }

void conservation(Probe& p) {
    double r = 1 / std::sqrt(14.0);
    std::vector<double> x0{3 * r, 2 * r, r};
    OrbitTrace tr = integrate_orbit(octa_field(), x0, 10.0, 1e-10, {P("x^2+y^2+z^2"), P("x^4+y^4+z^4")});
    p.expect(tr.integral_drift.size() == 2 && tr.integral_drift[0] < 1e-9 && tr.integral_drift[1] < 1e-9, "drift");
    double sg = semigroup_check(octa_field(), x0, 0.3, 0.3, 1e-10);
    p.expect(sg < 1e-8, "semigroup " + num(sg));
    p.note("drift " + num(tr.integral_drift[0]) + ", " + num(tr.integral_drift[1]) + "; semigroup " + num(sg));
}

void hyperoctahedral(Probe& p) {
    std::vector<std::string> v{"xi", "U"};
    p.expect(d3_octahedral_chart() == parse_poly("4*U^3 + (20-36*xi)*U^2 - 27*(2*xi-1)*(xi-1)^2*U", v), "D3 chart");

    MPoly d5 = discriminant_reduction_symbolic(5);
    p.expect(weighted_homogeneous(d5, std::vector<int>{1, 2, 3, 4, 5}, 25), "D5 weight 25");
    XiVector xi = make_xi(5, {make_rat(3, 2), make_rat(1, 3), make_rat(-2, 5), make_rat(1, 7)});
    UniPoly du = discriminant_reduction(xi);
    std::vector<Rat> at{xi.xi[0], xi.xi[1], xi.xi[2], xi.xi[3], make_rat(3, 11)};
    p.expect(d5.eval<Rat>(at) == du.eval(make_rat(3, 11)), "symbolic and specialized D5 agree");
    auto mm = coefficient_mismatches(d5, d5_printed_form());
    for (const auto& m : mm) {
        std::ostringstream s;
        s << "printed " << to_string(MPoly::monomial(5, m.m, Rat(1)), std::vector<std::string>{"a", "b", "c", "d", "x"})
          << " is " << to_string(m.reference) << ", computed " << to_string(m.computed);
        p.note(s.str());
    }
    p.note(std::to_string(mm.size()) + " printed-coefficient mismatch(es) logged");

    SingularFactorReport s = singular_factor_check(Rat(3));
    p.expect(s.has_double_factor, "(x - 36)^2 divides D5 at q = 3");

    double worst = 0;
    for (auto seed : std::vector<std::vector<Rat>>{{make_rat(1, 2), make_rat(11, 20), make_rat(3, 5), Rat(1), make_rat(3, 2)},
                                                 {make_rat(2, 3), make_rat(-1, 3), make_rat(1, 2)}}) {
        XiVector x = xi_from_point(seed);
        double t_end = x.n == 5 ? 0.5 : 3.0;
        ReductionRun run = triple_reduction_integrate(x, t_end, 1e-12, 201);
        VectorField f = build_hyperoct_field(x.n);
        for (int k : {40, 100, 160, 200}) {
            auto d = flow_point(f, x.seed, run.t[k], 1e-12);
            for (int j = 0; j < x.n; ++j) worst = std::max(worst, std::abs(d[j] - run.p[k][j]));
        }
    }
    p.expect(worst < 1e-6, "trajectory deviation " + num(worst));
    p.note("trajectory deviation " + num(worst));
}

void genus2(Probe& p) {
    Genus2Report g = genus2_reduction_check();
    p.expect(g.weierstrass_identity, "Weierstrass identity");
    p.expect(g.modular_discriminant, "modular discriminant");
    p.expect(g.curve_discriminant, "curve discriminant");
    p.expect(g.octahedral_specialization, "octahedral specialization");
}

void extremal(Probe& p) {
    ExtremalResult hi = extremal_ratio_2_4(ExtremalMode::max), lo = extremal_ratio_2_4(ExtremalMode::min);
    p.expect(std::abs(hi.value - 4) < 1e-6, "maximum " + num(hi.value));
    p.expect(std::abs(lo.value - 1.455668946) < 1e-6, "minimum " + num(lo.value));
    p.expect(hi.certificate < 1e-8 && lo.certificate < 1e-8, "certificates");
    p.note("certificates " + num(hi.certificate) + ", " + num(lo.certificate));
}

void beltrami(Probe& p) {
    BeltramiReport t = beltrami_probe(TrigField::T_tetra, 1000);
    p.expect(t.max_curl_deviation && *t.max_curl_deviation < 1e-12, "curl deviation");
    p.expect(t.max_divergence < 1e-12, "divergence");
    BeltramiReport d = beltrami_probe(TrigField::D_dihedral, 1000);
    p.expect(d.max_helmholtz_deviation < 1e-12, "Helmholtz deviation");
    p.note("curl " + num(*t.max_curl_deviation) + ", div " + num(t.max_divergence) + ", Helmholtz " + num(d.max_helmholtz_deviation));
}

}  // namespace

int main() {
    int failed = 0;
    failed += run(1, "group orders", group_orders);
    failed += run(2, "dimension tables", dimension_tables);
    failed += run(3, "superflow discovery", discovery);
    failed += run(4, "first integrals", first_integrals);
    failed += run(5, "Taylor fixtures", taylor_fixtures);
    failed += run(6, "closed forms against series", closed_forms);
    failed += run(7, "special-function constants", special_constants);
    failed += run(8, "spherical constants", spherical);
    failed += run(9, "vanish count", vanish_count);
    failed += run(10, "surface fixture", surface);
    failed += run(11, "conservation", conservation);
    failed += run(12, "hyperoctahedral reduction", hyperoctahedral);
    failed += run(13, "genus 2 to elliptic", genus2);
    failed += run(14, "extremal ratios", extremal);
    failed += run(15, "Beltrami probes", beltrami);
    std::printf("%d of 15 criteria passed\n", 15 - failed);
    return failed == 0 ? 0 : 1;
}

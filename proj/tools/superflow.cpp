#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "superflow/closedform.hpp"
#include "superflow/elliptic.hpp"
#include "superflow/errors.hpp"
#include "superflow/firstint.hpp"
#include "superflow/flows.hpp"
#include "superflow/groups.hpp"
#include "superflow/hyperoct.hpp"
#include "superflow/reynolds.hpp"
#include "superflow/spherical.hpp"

using namespace superflow;
using json = nlohmann::ordered_json;

namespace {

//--- output -----------------------------------------------------------------------

void dump(std::ostream& os, const json& j, int indent, int level) {
    std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
    std::string close(static_cast<std::size_t>(indent * level), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                dump(os, it.value(), indent, level + 1);
            }
            os << '\n' << close << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                dump(os, j[i], indent, level + 1);
            }
            os << '\n' << close << ']';
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
            return;
        }
        default:
            os << j.dump();
    }
}

struct Report {
    json doc = json::object();
    json checks = json::array();
    bool failed = false;

    void check(const std::string& name, bool pass, json measured, json reference, const std::string& source,
               json tolerance = nullptr) {
        json c = json::object();
        c["name"] = name;
        c["status"] = pass ? "pass" : "fail";
        c["measured"] = std::move(measured);
        c["reference"] = std::move(reference);
        c["source"] = source;
        c["tolerance"] = std::move(tolerance);
        checks.push_back(std::move(c));
        failed = failed || !pass;
    }
};

//--- argument helpers -------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& t : split(s, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(t, &pos));
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw DomainError("not a number: '" + t + "'");
        }
    }
    return out;
}

std::vector<Rat> parse_rats(const std::string& s) {
    std::vector<Rat> out;
    for (const auto& t : split(s, ',')) out.push_back(parse_rat(t));
    return out;
}

std::string group_name(const std::string& alias) {
    if (alias == "octahedral") return "O";
    if (alias == "octahedral_full") return "Ohat";
    if (alias == "tetrahedral") return "T";
    if (alias == "tetrahedral_full") return "That";
    if (alias == "icosahedral") return "icosa";
    return alias;
}

struct FieldArgs {
    std::string name, components, vars;
};

VectorField field_from(const FieldArgs& a, std::vector<std::string>& names) {
    if (!a.components.empty()) {
        names = a.vars.empty() ? std::vector<std::string>{} : split(a.vars, ',');
        auto comps = split(a.components, ';');
        if (names.empty()) names = default_var_names(static_cast<int>(comps.size()));
        std::vector<MPoly> ps;
        for (const auto& c : comps) ps.push_back(parse_poly(c, names));
        return VectorField(ps);
    }
    if (a.name.empty()) throw DomainError("a field is required: --field NAME or --components");
    VectorField v;
    if (a.name.rfind("hyperoct", 0) == 0) v = build_hyperoct_field(std::stoi(a.name.substr(8)));
    else if (a.name == "jouanolou") v = VectorField({parse_poly("y^2", {"x", "y", "z"}), parse_poly("z^2", {"x", "y", "z"}),
                                                    parse_poly("x^2", {"x", "y", "z"})});
    else v = named_field(a.name);
    names = default_var_names(v.dim());
    return v;
}

void add_field_options(CLI::App* sub, FieldArgs& f) {
    sub->add_option("--field", f.name, "tetra | octa | dixon | d5 | jouanolou | hyperoct3 | hyperoct5 | hyperoct7");
    sub->add_option("--components", f.components, "components separated by ';'");
    sub->add_option("--vars", f.vars, "variable names separated by ','");
}

json rat_json(const Rat& q) { return to_string(q); }

json poly_list(const std::vector<MPoly>& ps, std::span<const std::string> names) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(to_string(p, names));
    return a;
}

//--- subcommands ----------------------------------------------------------------------

struct Options {
    // find
    std::string group;
    int param = 0;
    std::string mode = "polynomial";
    int max_degree = 16;
    bool odd = false;
    // dims
    std::string family;
    int max = 12;
    // integrals / taylor / orbit / project / constants
    FieldArgs field;
    int degree = 2;
    int max_integral_degree = 0;
    int order = 6;
    std::string kind = "projective";
    std::string ray;
    std::string x0;
    double t_end = 1, rtol = 1e-10;
    std::vector<std::string> monitors;
    double drift_tol = 1e-9;
    std::string csv;
    std::string grid = "-4,4,-4,4";
    int resolution = 21;
    double tol = 1e-11;
    std::size_t max_triangles = 4'000'000;
    int seeds = 2000;
    // verify
    std::string theorem;
    // hyperoct
    std::string task;
    int n = 5;
    std::string xi, point;
    std::string q = "3";
    int samples = 200;
    // extremal
    int starts = 48;
    unsigned seed = 7;
};

void run_find(const Options& o, Report& r) {
    FiniteGroup g = builtin_group(group_name(o.group), o.param);
    SuperflowMode mode = o.mode == "projective" ? SuperflowMode::projective : SuperflowMode::polynomial;
    if (o.mode != "projective" && o.mode != "polynomial") throw DomainError("mode must be polynomial or projective");
    SuperflowReport s = find_superflow(g, mode, o.max_degree, o.odd);
    auto names = default_var_names(g.dim);
    json res = json::object();
    res["group"] = s.group;
    res["order"] = g.order();
    res["mode"] = std::string(to_string(s.mode));
    res["degree"] = s.degree;
    res["dim"] = s.dim;
    res["unique"] = s.unique;
    res["solenoidal"] = s.solenoidal;
    res["sphere_tangent"] = s.sphere_tangent;
    res["field"] = s.field ? json(to_string(*s.field, names)) : json(nullptr);
    res["denominator"] = s.denominator ? json(to_string(*s.denominator, names)) : json(nullptr);
    res["denominator_dim"] = s.denominator_dim;
    res["failure"] = s.failure;
    r.doc["result"] = res;
    r.check("unique invariant field", s.failure.empty() && s.unique && s.field.has_value(), s.dim, 1, "definition");
    if (s.field) r.check("field is invariant", verify_invariant_field(g, *s.field, o.seed), true, true, "identity");
}

void run_dims(const Options& o, Report& r) {
    json rows = json::array();
    if (!o.family.empty()) {
        std::string g;
        if (o.family == "tetra_full" || o.family == "tetra_full_solenoidal") g = "That";
        else if (o.family == "octa" || o.family == "octa_solenoidal_sphere") g = "O";
        else throw DomainError("unknown family '" + o.family + "'");
        FiniteGroup grp = builtin_group(g);
        for (int ell = 2; ell <= o.max; ell += 2) {
            int computed;
            if (o.family == "tetra_full_solenoidal") computed = solenoidal_and_sphere_dims(grp, ell).solenoidal;
            else if (o.family == "octa_solenoidal_sphere") computed = solenoidal_and_sphere_dims(grp, ell).both;
            else computed = invariant_vf_basis(grp, ell).dim();
            int closed = closed_form_dims(o.family, ell);
            rows.push_back({{"degree", ell}, {"computed", computed}, {"closed_form", closed}});
            r.check("dimension at degree " + std::to_string(ell), computed == closed, computed, closed, "literature", 0);
        }
        r.doc["result"] = {{"family", o.family}, {"group", g}, {"rows", rows}};
        return;
    }
    FiniteGroup grp = builtin_group(group_name(o.group), o.param);
    for (int ell = 1; ell <= o.max; ++ell) rows.push_back({{"degree", ell}, {"computed", invariant_vf_basis(grp, ell).dim()}});
    r.doc["result"] = {{"group", grp.name}, {"rows", rows}};
}

void run_integrals(const Options& o, Report& r) {
    std::vector<std::string> names;
    VectorField v = field_from(o.field, names);
    int hi = std::max(o.degree, o.max_integral_degree);
    json bases = json::array();
    for (int d = o.degree; d <= hi; ++d) {
        IntegralBasis b = polynomial_first_integrals(v, d);
        bases.push_back({{"degree", d}, {"dim", b.dim()}, {"basis", poly_list(b.basis, names)}});
        bool ok = true;
        for (const auto& w : b.basis) ok = ok && is_polynomial_first_integral(w, v);
        r.check("basis annihilated at degree " + std::to_string(d), ok, ok, true, "identity");
    }
    r.doc["result"] = {{"field", to_string(v, names)}, {"integrals", bases}};
}

void run_taylor(const Options& o, Report& r) {
    std::vector<std::string> names;
    VectorField v = field_from(o.field, names);
    FlowSeries s;
    if (o.kind == "projective") s = taylor_projective(v, o.order);
    else if (o.kind == "general") s = taylor_general(v, o.order);
    else throw DomainError("kind must be projective or general");
    json comps = json::array();
    for (int j = 0; j < s.dim(); ++j) {
        json terms = json::array();
        for (int k = 0; k < static_cast<int>(s.components[j].size()); ++k) {
            const auto& t = s.components[j][k];
            terms.push_back({{"index", k}, {"numerator", to_string(t.num, names)}, {"denominator_power", t.den_power}});
        }
        comps.push_back(terms);
    }
    json res = {{"field", to_string(v, names)},
                {"kind", o.kind},
                {"order", s.order},
                {"denominator", to_string(s.denominator, names)},
                {"components", comps}};
    if (!o.ray.empty()) {
        std::vector<Rat> dir = parse_rats(o.ray);
        if (static_cast<int>(dir.size()) != v.dim()) throw DomainError("ray has wrong dimension");
        json rays = json::array();
        for (int j = 0; j < v.dim(); ++j) {
            json c = json::array();
            for (const auto& q : ray_coefficients<Rat>(s, j, dir)) c.push_back(rat_json(q));
            rays.push_back(c);
        }
        res["ray"] = o.ray;
        res["ray_coefficients"] = rays;
    }
    if (v.is_polynomial() && o.kind == "projective") {
        auto resid = pde_residual(s, v);
        r.check("series solves the flow equation through its order", !resid || *resid > s.order,
                resid ? json(*resid) : json(nullptr), nullptr, "identity");
    }
    r.doc["result"] = res;
}

void run_orbit(const Options& o, Report& r) {
    std::vector<std::string> names;
    VectorField v = field_from(o.field, names);
    std::vector<double> x0 = parse_doubles(o.x0);
    if (static_cast<int>(x0.size()) != v.dim()) throw DomainError("initial point has wrong dimension");
    std::vector<MPoly> mons;
    for (const auto& m : o.monitors) mons.push_back(parse_poly(m, names));
    OrbitTrace tr = integrate_orbit(v, x0, o.t_end, o.rtol, mons);
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw DomainError("cannot write " + o.csv);
        write_csv(f, tr);
    }
    json drift = json::array();
    for (std::size_t i = 0; i < tr.integral_drift.size(); ++i) {
        drift.push_back({{"monitor", o.monitors[i]}, {"relative_drift", tr.integral_drift[i]}});
        r.check("drift of " + o.monitors[i], tr.integral_drift[i] < o.drift_tol, tr.integral_drift[i], 0.0, "identity",
                o.drift_tol);
    }
    r.doc["result"] = {{"field", to_string(v, names)}, {"x0", x0},          {"t_end", o.t_end},
                       {"rtol", o.rtol},                 {"accepted", tr.accepted}, {"rejected", tr.rejected},
                       {"samples", tr.times.size()},     {"final", tr.states.back()}, {"drift", drift},
                       {"csv", o.csv.empty() ? json(nullptr) : json(o.csv)}};
}

void run_project(const Options& o, Report& r) {
    std::vector<std::string> names;
    VectorField v = field_from(o.field, names);
    ProjectionMode mode;
    if (o.mode == "stereographic" || o.mode == "polynomial") mode = ProjectionMode::stereographic;
    else if (o.mode == "orthogonal") mode = ProjectionMode::orthogonal;
    else throw DomainError("projection mode must be stereographic or orthogonal");
    auto g = parse_doubles(o.grid);
    if (g.size() != 4) throw DomainError("grid needs a0,a1,b0,b1");
    Grid grid{g[0], g[1], g[2], g[3], o.resolution};
    PlanarField pf = planar_projection(v, mode, grid);
    if (!o.csv.empty()) {
        std::ofstream f(o.csv);
        if (!f) throw DomainError("cannot write " + o.csv);
        write_csv(f, pf);
    }
    std::vector<std::string> ab{"alpha", "beta"};
    json res = {{"field", to_string(v, names)}, {"mode", to_string(mode)}, {"samples", pf.samples.size()}};
    res["closed_form"] =
        pf.closed_form ? json::array({to_string(pf.closed_form->first, ab), to_string(pf.closed_form->second, ab)}) : json(nullptr);
    res["max_closed_form_deviation"] = pf.max_closed_form_deviation;
    res["reference_match"] = pf.reference_match ? json(*pf.reference_match) : json(nullptr);
    res["csv"] = o.csv.empty() ? json(nullptr) : json(o.csv);
    if (pf.closed_form)
        r.check("closed form agrees with sampled field", pf.max_closed_form_deviation < 1e-9, pf.max_closed_form_deviation, 0.0,
                "identity", 1e-9);
    if (pf.reference_match) r.check("closed form equals the reference", *pf.reference_match, *pf.reference_match, true, "literature");
    r.doc["result"] = res;
}

void run_constants(const Options& o, Report& r) {
    FieldArgs fa = o.field;
    if (fa.name.empty() && fa.components.empty()) fa.name = "octa";
    std::vector<std::string> names;
    VectorField v = field_from(fa, names);
    if (!v.is_polynomial()) {
        // a power of the sphere form is 1 on the unit sphere
        int n = v.dim(), k = v.denominator().degree() / 2;
        MPoly r2(n);
        for (int i = 0; i < n; ++i) r2 = r2 + MPoly::var(n, i) * MPoly::var(n, i);
        Monomial lead;
        lead.e[0] = 2 * k;
        Rat c = v.denominator().coeff(lead);
        if (c == 0 || v.denominator() != MPoly::monomial(n, Monomial{}, c) * r2.pow(k))
            throw DomainError("spherical constants need a polynomial field or a power of the sphere form as denominator");
        std::vector<MPoly> nums;
        for (const auto& p : v.numerators()) nums.push_back(p * MPoly::monomial(n, Monomial{}, 1 / c));
        v = VectorField(nums);
    }
    SphereOptions so;
    so.tol = o.tol;
    so.max_triangles = o.max_triangles;
    so.seeds = o.seeds;
    SphericalConstants c = spherical_constants(v, so);
    json sph = {{"field", to_string(v, names)},
                {"alpha0", c.alpha0 ? json(*c.alpha0) : json(nullptr)},
                {"alpha1", c.alpha1},
                {"alpha2", c.alpha2},
                {"alpha2_exact", rat_json(c.alpha2_exact)},
                {"alpha_inf", c.alpha_inf},
                {"argmax", c.argmax},
                {"omega0", c.omega0 ? json(*c.omega0) : json(nullptr)},
                {"omega1", c.omega1 ? json(*c.omega1) : json(nullptr)},
                {"omega_inf", c.omega_inf ? json(*c.omega_inf) : json(nullptr)},
                {"methods", {{"alpha0", c.method0}, {"alpha1", c.method1}, {"alpha2", c.method2}, {"alpha_inf", c.method_inf}}},
                {"error0", c.error0},
                {"error1", c.error1},
                {"triangles", c.triangles}};
    const D5Context& d5 = d5_context();
    json ell = {{"d5_fundamental_period", d5.Omega}, {"d5_Xi", d5.Xi}, {"weierstrass_real_half_period", weierstrass_omega()}};
    r.doc["result"] = {{"spherical", sph}, {"elliptic", ell}};
    if (c.omega0 && c.omega1 && c.omega_inf) {
        bool chain = *c.omega0 < *c.omega1 && *c.omega1 < 1 && 1 < *c.omega_inf;
        r.check("mean-ratio chain", chain, json::array({*c.omega0, *c.omega1, *c.omega_inf}), nullptr, "identity");
    }
    if (fa.name == "octa" && fa.components.empty()) {
        r.check("alpha2 of the octahedral field", c.alpha2_exact == Rat(4, 105), rat_json(c.alpha2_exact), "4/105", "literature", 0);
        double ref = (28945 + 2555 * std::sqrt(73.0)) / 24576;
        r.check("omega_inf of the octahedral field", std::abs(*c.omega_inf - ref) < 1e-9, *c.omega_inf, ref, "literature", 1e-9);
    }
    r.check("fundamental period", std::abs(d5.Omega - 1.7162590512) < 1e-8, d5.Omega, 1.7162590512, "literature", 1e-8);
    r.check("Xi integral", std::abs(d5.Xi - 2.4439543584) < 1e-8, d5.Xi, 2.4439543584, "literature", 1e-8);
    r.check("Weierstrass half period", std::abs(weierstrass_omega() - 2.1131881555) < 1e-9, weierstrass_omega(), 2.1131881555,
            "literature", 1e-9);
}

json series_rows(const SeriesMatchReport& s) {
    json rows = json::array();
    for (const auto& row : s.rows)
        rows.push_back({{"power", row.power},
                        {"closed_form", row.closed_form},
                        {"series", row.series},
                        {"reference", row.reference.empty() ? json(nullptr) : json(row.reference)}});
    return rows;
}

void run_verify(const Options& o, Report& r) {
    SeriesMatchReport s = o.theorem == "d5-gamma" ? d5_gamma_verify(o.order) : verify_theorem(o.theorem, o.order);
    json res = {{"theorem", s.theorem},
                {"ray", s.ray},
                {"quantity", s.quantity},
                {"order", s.order},
                {"exact", s.exact},
                {"rows", series_rows(s)},
                {"max_exact_mismatch", s.max_exact_mismatch},
                {"max_numeric_mismatch", s.max_numeric_mismatch},
                {"sample_t", s.sample_t},
                {"invariant_deviation", s.invariant_deviation ? json(*s.invariant_deviation) : json(nullptr)},
                {"pass", s.pass}};
    r.doc["result"] = res;
    r.check("closed form matches series", s.pass, s.exact ? json(s.max_exact_mismatch) : json(s.max_numeric_mismatch),
            s.exact ? json("0") : json(0.0), "literature", s.exact ? json(0) : json(1e-10));
}

void run_hyperoct(const Options& o, Report& r) {
    const std::string& t = o.task;
    json res = {{"task", t}, {"n", o.n}};
    if (t == "field") {
        VectorField v = build_hyperoct_field(o.n);
        res["field"] = to_string(v);
        res["degree"] = v.numerator(0).degree();
        r.check("solenoidal", divergence(v).is_zero(), true, true, "literature");
        r.check("power sums are the first integrals", power_sum_integrals_check(o.n), true, true, "literature");
    } else if (t == "discriminant") {
        std::vector<std::string> names;
        for (int k = 1; k < o.n; ++k) names.push_back("xi" + std::to_string(k));
        names.push_back("x");
        if (!o.xi.empty() || !o.point.empty()) {
            XiVector xi = o.point.empty() ? make_xi(o.n, parse_rats(o.xi)) : xi_from_point(parse_rats(o.point));
            UniPoly d = discriminant_reduction(xi);
            res["xi"] = json::array();
            for (const auto& v : xi.xi) res["xi"].push_back(rat_json(v));
            res["D"] = to_string(d, "x");
            r.check("degree of the reduced polynomial", d.degree() == xi.n, d.degree(), xi.n, "literature", 0);
        } else {
            MPoly d = discriminant_reduction_symbolic(o.n);
            res["D"] = to_string(d, names);
            std::vector<int> w;
            for (int k = 1; k <= o.n; ++k) w.push_back(k);
            r.check("weighted homogeneous", weighted_homogeneous(d, w, o.n * o.n), true, true, "literature");
            if (o.n == 3) {
                std::vector<std::string> v2{"xi", "U"};
                MPoly cubic = parse_poly("4*U^3 + (20-36*xi)*U^2 - 27*(2*xi-1)*(xi-1)^2*U", v2);
                r.check("three-dimensional chart reproduces the Upsilon cubic", d3_octahedral_chart() == cubic,
                        to_string(d3_octahedral_chart(), v2), to_string(cubic, v2), "literature");
            }
            if (o.n == 5) {
                json mm = json::array();
                for (const auto& m : coefficient_mismatches(d, d5_printed_form()))
                    mm.push_back({{"monomial", to_string(MPoly::monomial(5, m.m, Rat(1)), names)},
                                  {"computed", rat_json(m.computed)},
                                  {"printed", rat_json(m.reference)}});
                res["printed_form_mismatches"] = mm;
            }
        }
    } else if (t == "admissible") {
        XiVector xi = o.point.empty() ? admissibility_check(make_xi(o.n, parse_rats(o.xi))) : xi_from_point(parse_rats(o.point));
        res["admissible"] = xi.admissible;
        res["failures"] = xi.failures;
    } else if (t == "singular") {
        SingularFactorReport s = singular_factor_check(parse_rat(o.q));
        res["q"] = rat_json(s.q);
        res["D5"] = to_string(s.d5, "x");
        res["cubic"] = to_string(s.cubic, "x");
        res["cubic_shares_root"] = s.cubic_shares_root;
        res["cubic_discriminant"] = rat_json(s.cubic_discriminant);
        res["cubic_repeated_root"] = s.cubic_repeated_root;
        std::vector<std::string> vq{"q"};
        res["repeated_root_condition"] = to_string(singular_cubic_discriminant(), vq);
        r.check("double factor", s.has_double_factor, s.has_double_factor, true, "literature");
    } else if (t == "genus2") {
        Genus2Report g = genus2_reduction_check();
        r.check("Weierstrass identity", g.weierstrass_identity, g.weierstrass_identity, true, "literature");
        r.check("modular discriminant", g.modular_discriminant, g.modular_discriminant, true, "literature");
        r.check("curve discriminant", g.curve_discriminant, g.curve_discriminant, true, "literature");
        r.check("octahedral specialization", g.octahedral_specialization, g.octahedral_specialization, true, "literature");
    } else if (t == "reduce") {
        if (o.point.empty()) throw DomainError("reduce needs --point");
        XiVector xi = xi_from_point(parse_rats(o.point));
        ReductionRun run = triple_reduction_integrate(xi, o.t_end, o.rtol, o.samples);
        if (!o.csv.empty()) {
            std::ofstream f(o.csv);
            if (!f) throw DomainError("cannot write " + o.csv);
            write_csv(f, run);
        }
        VectorField v = build_hyperoct_field(xi.n);
        double dev = 0;
        for (std::size_t k = run.t.size() / 4; k < run.t.size(); k += std::max<std::size_t>(1, run.t.size() / 4)) {
            auto x = flow_point(v, xi.seed, run.t[k], o.rtol);
            for (int j = 0; j < xi.n; ++j) dev = std::max(dev, std::abs(x[j] - run.p[k][j]));
        }
        res["D"] = to_string(run.D, "x");
        res["samples"] = run.t.size();
        res["turning_points"] = run.turning_points;
        res["csv"] = o.csv.empty() ? json(nullptr) : json(o.csv);
        r.check("level residual", run.max_level() < 1e-7, run.max_level(), 0.0, "identity", 1e-7);
        r.check("motion residual", run.max_motion() < 1e-7, run.max_motion(), 0.0, "identity", 1e-7);
        r.check("integral residual", run.max_integral() < 1e-8, run.max_integral(), 0.0, "identity", 1e-8);
        r.check("agreement with direct integration", dev < 1e-6, dev, 0.0, "computed", 1e-6);
    } else {
        throw DomainError("hyperoct task must be field | discriminant | admissible | singular | genus2 | reduce");
    }
    r.doc["result"] = res;
}

void run_extremal(const Options& o, Report& r) {
    ExtremalMode mode;
    if (o.mode == "min") mode = ExtremalMode::min;
    else if (o.mode == "max") mode = ExtremalMode::max;
    else throw DomainError("extremal mode must be min or max");
    ExtremalResult e = extremal_ratio_2_4(mode, o.starts);
    r.doc["result"] = {{"mode", o.mode},
                       {"value", e.value},
                       {"optimizer", e.optimizer},
                       {"certificate", e.certificate},
                       {"search_value", e.search_value}};
    double ref = mode == ExtremalMode::max ? 4.0 : 1.455668946;
    r.check("extremal value", std::abs(e.value - ref) < 1e-6, e.value, ref, "literature", 1e-6);
    r.check("stationarity certificate", e.certificate < 1e-8, e.certificate, 0.0, "computed", 1e-8);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superflow: invariant vector fields, their flows and constants"};
    app.require_subcommand(1);
    Options o;
    std::string out;
    bool timing = false;
    app.add_option("--out", out, "write the JSON report here instead of stdout");
    app.add_flag("--timing", timing, "include wall time in the report");
    app.add_option("--seed", o.seed, "seed of randomized checks");

    auto* find = app.add_subcommand("find", "lowest-degree invariant field of a group");
    find->add_option("--group", o.group, "group name")->required();
    find->add_option("--param", o.param, "group parameter");
    find->add_option("--mode", o.mode, "polynomial | projective");
    find->add_option("--max-degree", o.max_degree);
    find->add_flag("--odd", o.odd, "scan odd degrees too");

    auto* dims = app.add_subcommand("dims", "dimension tables of invariant fields");
    dims->add_option("--family", o.family, "tetra_full | tetra_full_solenoidal | octa | octa_solenoidal_sphere");
    dims->add_option("--group", o.group, "group name (table without closed forms)");
    dims->add_option("--param", o.param);
    dims->add_option("--max", o.max);

    auto* integrals = app.add_subcommand("integrals", "polynomial first integrals");
    add_field_options(integrals, o.field);
    integrals->add_option("--degree", o.degree);
    integrals->add_option("--max-degree", o.max_integral_degree);

    auto* taylor = app.add_subcommand("taylor", "Taylor series of the flow");
    add_field_options(taylor, o.field);
    taylor->add_option("--order", o.order);
    taylor->add_option("--kind", o.kind, "projective | general");
    taylor->add_option("--ray", o.ray, "direction for ray coefficients, e.g. 3,1,2");

    auto* orbit = app.add_subcommand("orbit", "numerical orbit with integral monitors");
    add_field_options(orbit, o.field);
    orbit->add_option("--x0", o.x0)->required();
    orbit->add_option("--t-end", o.t_end);
    orbit->add_option("--rtol", o.rtol);
    orbit->add_option("--monitor", o.monitors, "polynomial to monitor (repeatable)");
    orbit->add_option("--drift-tol", o.drift_tol);
    orbit->add_option("--csv", o.csv);

    auto* project = app.add_subcommand("project", "planar projection of a sphere-tangent field");
    add_field_options(project, o.field);
    project->add_option("--mode", o.mode, "stereographic | orthogonal");
    project->add_option("--grid", o.grid, "a0,a1,b0,b1");
    project->add_option("--resolution", o.resolution);
    project->add_option("--csv", o.csv);

    auto* constants = app.add_subcommand("constants", "spherical and elliptic constants");
    add_field_options(constants, o.field);
    constants->add_option("--tol", o.tol, "quadrature error target");
    constants->add_option("--max-triangles", o.max_triangles);
    constants->add_option("--seeds", o.seeds);

    auto* verify = app.add_subcommand("verify", "closed forms against exact series");
    verify->add_option("--theorem", o.theorem, "thm2 | thm-s4 | thm-s4-trig | thm-spec | thm4 | thm-d10 | d5-gamma")->required();
    verify->add_option("--order", o.order);

    auto* hyper = app.add_subcommand("hyperoct", "hyperoctahedral fields and the triple reduction");
    hyper->add_option("--task", o.task, "field | discriminant | admissible | singular | genus2 | reduce")->required();
    hyper->add_option("--n", o.n);
    hyper->add_option("--xi", o.xi, "xi_1,...,xi_{n-1}");
    hyper->add_option("--point", o.point, "rational point");
    hyper->add_option("--q", o.q);
    hyper->add_option("--t-end", o.t_end);
    hyper->add_option("--rtol", o.rtol);
    hyper->add_option("--samples", o.samples);
    hyper->add_option("--csv", o.csv);

    auto* extremal = app.add_subcommand("extremal", "extremal ratios of cubic forms on the circle");
    extremal->add_option("--mode", o.mode, "min | max")->required();
    extremal->add_option("--starts", o.starts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report r;
    CLI::App* sub = app.get_subcommands().front();
    r.doc["schema"] = 1;
    r.doc["command"] = sub->get_name();
    json args = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_single_name() == "help" || opt->count() == 0) continue;
        auto vals = opt->results();
        args[opt->get_single_name()] = vals.size() == 1 ? json(vals.front()) : json(vals);
    }
    r.doc["args"] = args;
    r.doc["seed"] = o.seed;

    auto start = std::chrono::steady_clock::now();
    try {
        const std::string& name = sub->get_name();
        if (name == "find") run_find(o, r);
        else if (name == "dims") run_dims(o, r);
        else if (name == "integrals") run_integrals(o, r);
        else if (name == "taylor") run_taylor(o, r);
        else if (name == "orbit") run_orbit(o, r);
        else if (name == "project") run_project(o, r);
        else if (name == "constants") run_constants(o, r);
        else if (name == "verify") run_verify(o, r);
        else if (name == "hyperoct") run_hyperoct(o, r);
        else if (name == "extremal") run_extremal(o, r);
    } catch (const DomainError& e) {
        std::cerr << "superflow: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "superflow: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "superflow: " << e.what() << '\n';
        return 1;
    }
    r.doc["checks"] = r.checks;
    r.doc["status"] = r.failed ? "fail" : "pass";
    if (timing)
        r.doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream os;
    dump(os, r.doc, 2, 0);
    os << '\n';
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "superflow: cannot write " << out << '\n';
            return 2;
        }
        f << os.str();
    }
    return r.failed ? 1 : 0;
}

#include "superflow/reynolds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "superflow/parallel.hpp"

namespace superflow {

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 0;
        for (int v : m.e) h = h * 1000003u + static_cast<std::size_t>(v);
        return h;
    }
};

struct MonomialIndex {
    std::vector<Monomial> list;
    std::unordered_map<Monomial, int, MonomialHash> pos;

    MonomialIndex(int n, int d) : list(monomials_of_degree(n, d)) {
        for (int i = 0; i < static_cast<int>(list.size()); ++i) pos.emplace(list[i], i);
    }
    int size() const { return static_cast<int>(list.size()); }
    int at(const Monomial& m) const { return pos.at(m); }
};

using SparseRow = std::vector<std::pair<int, Rat>>;

void require_exact(const FiniteGroup& g) {
    if (!g.is_exact()) throw DomainError("operation needs an exact group; '" + g.name + "' is approximate");
}

std::vector<SignedPerm> signed_perms(const FiniteGroup& g) {
    std::vector<SignedPerm> out(g.elements.size());
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        if (!as_signed_perm(g.elements[i], out[i])) throw DomainError("group element is not a signed permutation");
    return out;
}

// Image of x^a under a signed permutation; returns the sign.
int act(const SignedPerm& sp, const Monomial& a, int n, Monomial& out) {
    out = Monomial{};
    int s = 1;
    for (int i = 0; i < n; ++i) {
        out.e[sp.target[i]] = a.e[i];
        if (sp.sign[i] < 0 && (a.e[i] & 1)) s = -s;
    }
    return s;
}

// Orbit sums over coordinates (component, monomial); components = 1 for forms.
std::vector<SparseRow> orbit_rows(const FiniteGroup& g, int components, const MonomialIndex& mi) {
    auto perms = signed_perms(g);
    int n = g.dim, m = mi.size();
    std::vector<char> visited(static_cast<std::size_t>(components) * m, 0);
    std::vector<SparseRow> rows;
    Monomial img;
    for (int c = 0; c < components; ++c) {
        for (int k = 0; k < m; ++k) {
            if (visited[c * m + k]) continue;
            std::map<int, long> acc;
            for (const auto& sp : perms) {
                int s = act(sp, mi.list[k], n, img);
                int c2 = c;
                if (components > 1) {
                    c2 = sp.target[c];
                    s *= sp.sign[c];
                }
                int coord = c2 * m + mi.at(img);
                acc[coord] += s;
                visited[coord] = 1;
            }
            long lead = acc.begin()->second;
            if (lead == 0) continue;  // a stabilizer element acts by −1
            SparseRow row;
            for (const auto& [coord, v] : acc) row.emplace_back(coord, Rat(v, lead));
            for (auto& [coord, v] : row) v.canonicalize();
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) { return a.front().first < b.front().first; });
    return rows;
}

SparseRow to_row(const std::vector<MPoly>& comps, const MonomialIndex& mi) {
    SparseRow row;
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
        for (const auto& [mono, coef] : comps[c].terms()) row.emplace_back(c * mi.size() + mi.at(mono), coef);
    return row;
}

std::vector<SparseRow> reduce_rows(const std::vector<SparseRow>& rows, int width) {
    RatMatrix m(static_cast<int>(rows.size()), width);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (const auto& [c, v] : rows[i]) m(i, c) = v;
    auto piv = rref(m);
    std::vector<SparseRow> out;
    for (int i = 0; i < static_cast<int>(piv.size()); ++i) {
        SparseRow r;
        for (int c = 0; c < width; ++c)
            if (m(i, c) != 0) r.emplace_back(c, m(i, c));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SparseRow> averaging_rows(const FiniteGroup& g, int components, const MonomialIndex& mi) {
    int n = g.dim, m = mi.size();
    std::vector<SparseRow> rows(static_cast<std::size_t>(components) * m);
    parallel_for(rows.size(), [&](std::size_t idx) {
        int c = static_cast<int>(idx) / m, k = static_cast<int>(idx) % m;
        MPoly mono = MPoly::monomial(n, mi.list[k], Rat(1));
        if (components == 1) {
            rows[idx] = to_row({reynolds_project(g, mono)}, mi);
        } else {
            std::vector<MPoly> comps(n, MPoly(n));
            comps[c] = mono;
            rows[idx] = to_row(reynolds_project(g, VectorField(comps)).numerators(), mi);
        }
    });
    std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });
    return reduce_rows(rows, components * m);
}

std::vector<SparseRow> invariant_rows(const FiniteGroup& g, int components, const MonomialIndex& mi, ReynoldsPath path) {
    require_exact(g);
    if (path == ReynoldsPath::automatic) path = g.signed_permutations() ? ReynoldsPath::orbit : ReynoldsPath::averaging;
    return path == ReynoldsPath::orbit ? orbit_rows(g, components, mi) : averaging_rows(g, components, mi);
}

MPoly radial_pairing(const VectorField& v) {
    MPoly r(v.dim());
    for (int i = 0; i < v.dim(); ++i) r += MPoly::var(v.dim(), i) * v.numerator(i);
    return r;
}

int rank_of_images(const std::vector<MPoly>& images) {
    std::map<Monomial, int, GrlexDesc> rowid;
    for (const auto& p : images)
        for (const auto& [m, c] : p.terms()) rowid.try_emplace(m, 0);
    int r = 0;
    for (auto& [m, id] : rowid) id = r++;
    RatMatrix mat(r, static_cast<int>(images.size()));
    for (int j = 0; j < static_cast<int>(images.size()); ++j)
        for (const auto& [m, c] : images[j].terms()) mat(rowid[m], j) = c;
    return rank(mat);
}

}  // namespace

VectorField reynolds_project(const FiniteGroup& g, const VectorField& v) {
    require_exact(g);
    if (!v.is_polynomial()) throw DomainError("Reynolds projection needs polynomial components");
    std::vector<MPoly> comps = v.polynomial_components();
    VectorField poly(comps);
    std::vector<MPoly> sum(v.dim(), MPoly(v.dim()));
    for (const auto& e : g.elements) {
        VectorField w = conjugate_field(poly, e);
        for (int i = 0; i < v.dim(); ++i) sum[i] += w.numerator(i);
    }
    Rat inv(1, g.order());
    for (auto& p : sum) p *= inv;
    return VectorField(sum);
}

MPoly reynolds_project(const FiniteGroup& g, const MPoly& p) {
    require_exact(g);
    MPoly sum(p.nvars());
    for (const auto& e : g.elements) sum += compose_linear(p, e);
    return sum * Rat(1, g.order());
}

VFSpace invariant_vf_basis(const FiniteGroup& g, int degree, ReynoldsPath path) {
    if (degree < 1) throw DomainError("vector-field degree must be >= 1");
    int n = g.dim;
    MonomialIndex mi(n, degree);
    VFSpace space{g.name, degree, {}};
    for (const auto& row : invariant_rows(g, n, mi, path)) {
        std::vector<MPoly> comps(n, MPoly(n));
        for (const auto& [coord, v] : row) comps[coord / mi.size()].add_term(mi.list[coord % mi.size()], v);
        space.basis.emplace_back(std::move(comps));
    }
    return space;
}

std::vector<MPoly> invariant_form_basis(const FiniteGroup& g, int degree, ReynoldsPath path) {
    if (degree < 0) throw DomainError("negative form degree");
    MonomialIndex mi(g.dim, degree);
    std::vector<MPoly> out;
    for (const auto& row : invariant_rows(g, 1, mi, path)) {
        MPoly p(g.dim);
        for (const auto& [coord, v] : row) p.add_term(mi.list[coord], v);
        out.push_back(std::move(p));
    }
    return out;
}

std::string_view to_string(SuperflowMode m) { return m == SuperflowMode::polynomial ? "polynomial" : "projective"; }

MPoly primitive_part(const MPoly& p) {
    if (p.is_zero()) return p;
    Int l = 1, gcd = 0;
    for (const auto& [m, c] : p.terms()) l = lcm(l, c.get_den());
    for (const auto& [m, c] : p.terms()) gcd = ::gcd(gcd, Int(c.get_num() * (l / c.get_den())));
    Rat scale(l, gcd);
    if (p.leading_coeff() < 0) scale = -scale;
    scale.canonicalize();
    return p * scale;
}

VectorField primitive_part(const VectorField& v) {
    // common scale across components, sign fixed by the first nonzero component
    int n = v.dim();
    MPoly packed(n + 1);
    for (int i = 0; i < n; ++i) packed += v.numerator(i).extended(n + 1) * MPoly::var(n + 1, n).pow(n - i);
    MPoly prim = primitive_part(packed);
    if (packed.is_zero()) return v;
    Rat scale = prim.leading_coeff() / packed.leading_coeff();
    std::vector<MPoly> comps;
    for (int i = 0; i < n; ++i) comps.push_back(v.numerator(i) * scale);
    return VectorField(comps, v.denominator());
}

SuperflowReport find_superflow(const FiniteGroup& g, SuperflowMode mode, int max_degree, bool include_odd) {
    require_exact(g);
    SuperflowReport rep;
    rep.group = g.name;
    rep.mode = mode;
    int step = include_odd ? 1 : 2;
    for (int ell = step; ell <= max_degree; ell += step) {
        VFSpace space = invariant_vf_basis(g, ell);
        if (space.dim() == 0) continue;
        rep.degree = ell;
        rep.dim = space.dim();
        rep.unique = rep.dim == 1;
        if (!rep.unique) {
            rep.failure = "invariant vector fields of degree " + std::to_string(ell) + " form a space of dimension " +
                          std::to_string(rep.dim);
            return rep;
        }
        VectorField num = primitive_part(space.basis[0]);
        rep.field = num;
        if (mode == SuperflowMode::projective) {
            auto forms = invariant_form_basis(g, ell - 2);
            rep.denominator_dim = static_cast<int>(forms.size());
            if (forms.size() != 1) {
                rep.failure = "invariant forms of degree " + std::to_string(ell - 2) + " form a space of dimension " +
                              std::to_string(forms.size());
            } else {
                rep.denominator = primitive_part(forms[0]);
                rep.field = VectorField(num.numerators(), *rep.denominator);
            }
        }
        rep.solenoidal = divergence(*rep.field).is_zero();
        rep.sphere_tangent = radial_pairing(num).is_zero();
        return rep;
    }
    throw DomainError("no invariant vector field of degree <= " + std::to_string(max_degree) + " for group '" + g.name + "'");
}

double invariance_residual(const FiniteGroup& g, const VectorField& v, unsigned seed) {
    int n = v.dim();
    if (g.dim != n) throw DomainError("group and field dimensions differ");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<RealMatrix> inv;
    for (const auto& e : g.real_elements) inv.push_back(inverse(e));
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(n);
        for (auto& xi : x) xi = u(rng);
        auto vx = v.eval<double>(x);
        double scale = 1;
        for (double c : vx) scale = std::max(scale, 1 + std::abs(c));
        for (std::size_t k = 0; k < g.real_elements.size(); ++k) {
            const auto& e = g.real_elements[k];
            std::vector<double> gx(n, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) gx[i] += e(i, j) * x[j];
            auto vgx = v.eval<double>(gx);
            for (int i = 0; i < n; ++i) {
                double w = 0;
                for (int j = 0; j < n; ++j) w += inv[k](i, j) * vgx[j];
                worst = std::max(worst, std::abs(w - vx[i]) / scale);
            }
        }
    }
    return worst;
}

bool verify_invariant_field(const FiniteGroup& g, const VectorField& v, unsigned seed) {
    return invariance_residual(g, v, seed) < kVerifyTol;
}

int closed_form_dims(std::string_view family, int ell) {
    if (ell < 0 || ell % 2 != 0) throw DomainError("closed-form dimension formulas need an even degree");
    if (family == "tetra_full") return (ell + 2) * (ell + 2) / 16;
    if (family == "tetra_full_solenoidal") return (ell * ell + 4 * ell + 12) / 24;
    if (family == "octa") return ell * ell / 16;
    if (family == "octa_solenoidal_sphere") return (ell * ell + 12 * ell + 16) / 48;
    throw DomainError("unknown dimension family '" + std::string(family) + "'");
}

SolenoidalSphereDims solenoidal_and_sphere_dims(const FiniteGroup& g, int ell) {
    VFSpace space = invariant_vf_basis(g, ell);
    int k = space.dim();
    if (k == 0) return {};
    std::vector<MPoly> div, rad, both;
    int n = g.dim;
    for (const auto& b : space.basis) {
        MPoly d = divergence(b).as_polynomial();
        MPoly r = radial_pairing(b);
        div.push_back(d);
        rad.push_back(r);
        // stack both maps into one image by tagging with an extra variable
        both.push_back(d.extended(n + 1) + r.extended(n + 1) * MPoly::var(n + 1, n));
    }
    return {k - rank_of_images(div), k - rank_of_images(rad), k - rank_of_images(both)};
}

}  // namespace superflow

#include "superflow/groups.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>

#include "superflow/reynolds.hpp"

namespace superflow {

namespace {

struct RatMatrixLess {
    bool operator()(const RatMatrix& a, const RatMatrix& b) const {
        return std::lexicographical_compare(a.a.begin(), a.a.end(), b.a.begin(), b.a.end());
    }
};

bool close_real(const RealMatrix& a, const RealMatrix& b) {
    for (std::size_t i = 0; i < a.a.size(); ++i)
        if (std::abs(a.a[i] - b.a[i]) > kGroupTol) return false;
    return true;
}

template <class M>
int check_square(const std::vector<M>& gens) {
    if (gens.empty()) throw DomainError("no generators");
    int n = gens[0].rows;
    for (const auto& g : gens)
        if (g.rows != n || g.cols != n) throw DomainError("generators must be square matrices of equal size");
    return n;
}

RatMatrix perm_matrix(const std::vector<int>& image) {
    // row i has a one in column image[i]: x_i -> x_{image[i]}
    int n = static_cast<int>(image.size());
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, image[i]) = 1;
    return m;
}

std::vector<int> cycle_image(int n, int len) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i < len ? (i + 1) % len : i;
    return v;
}

}  // namespace

bool FiniteGroup::contains(const RatMatrix& m) const {
    return std::find(elements.begin(), elements.end(), m) != elements.end();
}

bool FiniteGroup::contains(const RealMatrix& m) const {
    return std::any_of(real_elements.begin(), real_elements.end(), [&](const RealMatrix& e) { return close_real(e, m); });
}

bool FiniteGroup::signed_permutations() const {
    if (!is_exact()) return false;
    SignedPerm sp;
    return std::all_of(elements.begin(), elements.end(), [&](const RatMatrix& m) { return as_signed_perm(m, sp); });
}

FiniteGroup close_group(const std::vector<RatMatrix>& generators, int max_order, std::string name) {
    if (max_order <= 0) throw DomainError("max_order must be positive");
    int n = check_square(generators);
    FiniteGroup g;
    g.name = std::move(name);
    g.kind = GroupKind::exact;
    g.dim = n;
    g.generators = generators;
    std::set<RatMatrix, RatMatrixLess> seen;
    std::deque<RatMatrix> queue;
    RatMatrix id = RatMatrix::identity(n);
    seen.insert(id);
    queue.push_back(id);
    g.elements.push_back(id);
    while (!queue.empty()) {
        RatMatrix e = std::move(queue.front());
        queue.pop_front();
        for (const auto& s : generators) {
            RatMatrix p = e * s;
            if (seen.insert(p).second) {
                if (static_cast<int>(g.elements.size()) >= max_order)
                    throw GroupTooLarge("group closure exceeds max_order " + std::to_string(max_order));
                g.elements.push_back(p);
                queue.push_back(std::move(p));
            }
        }
    }
    for (const auto& m : g.generators) g.real_generators.push_back(to_real(m));
    for (const auto& m : g.elements) g.real_elements.push_back(to_real(m));
    return g;
}

FiniteGroup close_group(const std::vector<RealMatrix>& generators, int max_order, std::string name) {
    if (max_order <= 0) throw DomainError("max_order must be positive");
    int n = check_square(generators);
    FiniteGroup g;
    g.name = std::move(name);
    g.kind = GroupKind::approx;
    g.dim = n;
    g.real_generators = generators;
    g.real_elements.push_back(RealMatrix::identity(n));
    for (std::size_t head = 0; head < g.real_elements.size(); ++head) {
        for (const auto& s : generators) {
            RealMatrix p = g.real_elements[head] * s;
            if (g.contains(p)) continue;
            if (static_cast<int>(g.real_elements.size()) >= max_order)
                throw GroupTooLarge("group closure exceeds max_order " + std::to_string(max_order));
            g.real_elements.push_back(std::move(p));
        }
    }
    return g;
}

FiniteGroup builtin_group(std::string_view spec, int param) {
    std::string name(spec);
    if (auto open = name.find('('); open != std::string::npos) {
        auto close = name.find(')', open);
        if (close == std::string::npos || close != name.size() - 1) throw DomainError("bad group name '" + name + "'");
        try {
            param = std::stoi(name.substr(open + 1, close - open - 1));
        } catch (const std::exception&) {
            throw DomainError("bad group parameter in '" + name + "'");
        }
        name = name.substr(0, open);
    }
    if (name == "tetrahedral") name = "That";
    if (name == "octahedral") name = "O";
    auto label = [&](const std::string& base) { return param ? base + "(" + std::to_string(param) + ")" : base; };

    const RatMatrix t_alpha{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    const RatMatrix t_beta{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
    const RatMatrix t_gamma{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    const RatMatrix t_delta{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    const RatMatrix o_alpha{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}};
    const RatMatrix o_beta{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    const RatMatrix o_gamma{{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}};

    if (name == "klein4") return close_group({t_alpha, t_beta}, 10000, "klein4");
    if (name == "T") return close_group({t_alpha, t_beta, t_delta}, 10000, "T");
    if (name == "That") return close_group({t_alpha, t_beta, t_gamma, t_delta}, 10000, "That");
    if (name == "O") return close_group({o_alpha, o_beta, o_gamma}, 10000, "O");
    if (name == "Ohat") return close_group({t_alpha, t_beta, t_gamma, t_delta, o_alpha, o_beta, o_gamma}, 10000, "Ohat");

    if (name == "Sn1") {
        int n = param;
        if (n < 2 || n > 8) throw DomainError("Sn1 needs 2 <= n <= 8");
        std::vector<int> swap(n);
        for (int i = 0; i < n; ++i) swap[i] = i;
        std::swap(swap[0], swap[1]);
        RatMatrix kappa = RatMatrix::identity(n);
        for (int i = 0; i < n; ++i) kappa(i, 0) = -1;
        std::vector<RatMatrix> gens{perm_matrix(swap), kappa};
        if (n > 2) gens.push_back(perm_matrix(cycle_image(n, n)));
        return close_group(gens, 10000, label("Sn1"));
    }
    if (name == "hyperoct") {
        int n = param;
        if (n < 3 || n % 2 == 0 || n > 7) throw DomainError("hyperoct needs odd 3 <= n <= 7");
        RatMatrix gamma = perm_matrix([&] {
            std::vector<int> v(n);
            for (int i = 0; i < n; ++i) v[i] = i;
            std::swap(v[0], v[1]);
            return v;
        }());
        gamma(2, 2) = -1;
        return close_group({perm_matrix(cycle_image(n, n)), perm_matrix(cycle_image(n, 3)), gamma}, 10000,
                           label("hyperoct"));
    }
    if (name == "hyperoct_full") {
        int n = param;
        if (n < 2 || n > 7) throw DomainError("hyperoct_full needs 2 <= n <= 7");
        std::vector<int> swap(n);
        for (int i = 0; i < n; ++i) swap[i] = i;
        std::swap(swap[0], swap[1]);
        RatMatrix flip = RatMatrix::identity(n);
        flip(0, 0) = -1;
        return close_group({perm_matrix(swap), perm_matrix(cycle_image(n, n)), flip}, 10000, label("hyperoct_full"));
    }
    if (name == "dihedral") {
        int m = param;
        if (m < 3 || m % 2 == 0) throw DomainError("dihedral needs odd order parameter 2d+1 >= 3");
        double a = 2 * std::numbers::pi / m;
        RealMatrix rot{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
        RealMatrix swap{{0, 1}, {1, 0}};
        return close_group(std::vector<RealMatrix>{rot, swap}, 10000, label("dihedral"));
    }
    if (name == "icosa") {
        const double phi = std::numbers::phi;
        RealMatrix a{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
        RealMatrix b{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
        RealMatrix c{{0.5, -phi / 2, 1 / (2 * phi)}, {phi / 2, 1 / (2 * phi), -0.5}, {1 / (2 * phi), 0.5, phi / 2}};
        return close_group(std::vector<RealMatrix>{a, b, c}, 10000, "icosa");
    }
    throw DomainError("unknown group '" + std::string(spec) + "'");
}

std::vector<std::string> builtin_group_names() {
    return {"klein4", "T", "That", "O", "Ohat", "Sn1(n)", "dihedral(2d+1)", "hyperoct(n)", "hyperoct_full(n)", "icosa"};
}

FiniteGroup intersect(const FiniteGroup& a, const FiniteGroup& b) {
    if (!a.is_exact() || !b.is_exact()) throw DomainError("intersection needs exact groups");
    std::vector<RatMatrix> common;
    for (const auto& m : a.elements)
        if (b.contains(m)) common.push_back(m);
    return close_group(common, 10000, a.name + "∩" + b.name);
}

std::vector<int> molien_dims(const FiniteGroup& g, int max_degree) {
    if (!g.is_exact()) throw DomainError("molien dimensions need an exact group");
    std::vector<int> dims;
    for (int d = 0; d <= max_degree; ++d) dims.push_back(static_cast<int>(invariant_form_basis(g, d).size()));
    return dims;
}

}  // namespace superflow

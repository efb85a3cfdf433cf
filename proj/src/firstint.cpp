#include "superflow/firstint.hpp"

#include <map>

namespace superflow {

namespace {

MPoly lie_derivative(const MPoly& w, const VectorField& v) {
    MPoly r(v.dim());
    for (int i = 0; i < v.dim(); ++i) r += w.extended(v.dim()).derivative(i) * v.numerator(i);
    return r;
}

}  // namespace

IntegralBasis polynomial_first_integrals(const VectorField& v, int degree) {
    if (degree < 1) throw DomainError("first-integral degree must be >= 1");
    int n = v.dim();
    auto cols = monomials_of_degree(n, degree);
    std::vector<MPoly> images;
    for (const auto& m : cols) images.push_back(lie_derivative(MPoly::monomial(n, m, Rat(1)), v));
    std::map<Monomial, int, GrlexDesc> rowid;
    for (const auto& p : images)
        for (const auto& [m, c] : p.terms()) rowid.try_emplace(m, 0);
    int r = 0;
    for (auto& [m, id] : rowid) id = r++;
    RatMatrix mat(r, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (const auto& [m, c] : images[j].terms()) mat(rowid[m], j) = c;
    IntegralBasis out{degree, {}};
    for (const auto& vec : nullspace(mat)) {
        MPoly w(n);
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) w.add_term(cols[j], vec[j]);
        out.basis.push_back(std::move(w));
    }
    return out;
}

bool is_polynomial_first_integral(const MPoly& w, const VectorField& v) { return lie_derivative(w, v).is_zero(); }

bool rational_first_integral_check(const MPoly& wnum, const MPoly& wden, const VectorField& v) {
    if (wden.is_zero()) throw DomainError("zero denominator");
    if (!wnum.is_homogeneous() || !wden.is_homogeneous()) throw DomainError("first integrals must be homogeneous");
    return (wden.extended(v.dim()) * lie_derivative(wnum, v) - wnum.extended(v.dim()) * lie_derivative(wden, v)).is_zero();
}

RatFunc lagrange_sum(int n, int s) {
    if (n < 2 || n > 8) throw DomainError("Lagrange identity needs 2 <= n <= 8");
    if (s < 0) throw DomainError("negative power");
    auto y = [n](int i) { return MPoly::var(n, i); };
    MPoly vander(n, Rat(1));
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) vander = vander * (y(i) - y(k));
    // Vandermonde / p'(y_j) = (−1)^j Π_{i<k; i,k≠j}(y_i − y_k)
    MPoly num(n);
    for (int j = 0; j < n; ++j) {
        MPoly rest(n, Rat(j % 2 ? -1 : 1));
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k)
                if (i != j && k != j) rest = rest * (y(i) - y(k));
        num += y(j).pow(s) * rest;
    }
    return RatFunc(num, vander);
}

bool lagrange_identity_check(int n) {
    if (n < 3 || n > 8) throw DomainError("Lagrange identity check needs 3 <= n <= 8");
    for (int s = 0; s <= n - 2; ++s)
        if (!lagrange_sum(n, s).is_zero()) return false;
    RatFunc top = lagrange_sum(n, n - 1);
    return top.num() == top.den();
}

VectorField q_field(int n) {
    if (n < 2 || n > kMaxVars) throw DomainError("field dimension out of range");
    MPoly s(n);
    for (int i = 0; i < n; ++i) s += MPoly::var(n, i);
    std::vector<MPoly> comps;
    for (int i = 0; i < n; ++i) {
        MPoly x = MPoly::var(n, i);
        comps.push_back(x * x * Rat(n + 1) - x * s * Rat(2));
    }
    return VectorField(comps);
}

MPoly q_integral(int n, int ell) {
    if (ell < 1 || ell > n) throw DomainError("integral index out of range");
    int l = ell - 1;
    MPoly w = MPoly::var(n, l).pow(n - 2);
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (i != l && k != l) w = w * (MPoly::var(n, i) - MPoly::var(n, k));
    return w;
}

}  // namespace superflow

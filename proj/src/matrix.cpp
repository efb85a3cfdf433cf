#include "superflow/matrix.hpp"

#include <utility>

namespace superflow {

RealMatrix to_real(const RatMatrix& m) {
    RealMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].get_d();
    return r;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows != m.cols) throw DomainError("inverse of non-square matrix");
    int n = m.rows;
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw DomainError("singular matrix");
    RatMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

RealMatrix inverse(const RealMatrix& m) {
    if (m.rows != m.cols) throw DomainError("inverse of non-square matrix");
    int n = m.rows;
    RealMatrix a = m, r = RealMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
        if (std::abs(a(p, c)) < 1e-300) throw DomainError("singular matrix");
        for (int j = 0; j < n; ++j) {
            std::swap(a(c, j), a(p, j));
            std::swap(r(c, j), r(p, j));
        }
        double inv = 1.0 / a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) *= inv;
            r(c, j) *= inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            double f = a(i, c);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                r(i, j) -= f * r(c, j);
            }
        }
    }
    return r;
}

Rat determinant(const RatMatrix& m) {
    if (m.rows != m.cols) throw DomainError("determinant of non-square matrix");
    RatMatrix a = m;
    int n = m.rows;
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
            det = -det;
        }
        det *= a(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(c, c);
            for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
        Rat inv = 1 / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (int j = c; j < m.cols; ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

std::vector<std::vector<Rat>> nullspace(RatMatrix m) {
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(m.cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return MPoly(1, Rat(1));
    int nv = m[0][0].nvars();
    for (auto& row : m)
        for (auto& e : row) nv = std::max(nv, e.nvars());
    MPoly prev(nv, Rat(1));
    bool neg = false;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return MPoly(nv);
            std::swap(m[k], m[p]);
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MPoly(nv);
        }
        prev = m[k][k];
    }
    MPoly d = m[n - 1][n - 1].extended(nv);
    return neg ? -d : d;
}

bool as_signed_perm(const RatMatrix& m, SignedPerm& out) {
    if (m.rows != m.cols) return false;
    int n = m.rows;
    out.target.assign(n, -1);
    out.sign.assign(n, 0);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Rat& v = m(i, j);
            if (v == 0) continue;
            if (out.target[i] != -1 || used[j]) return false;
            if (v == 1) out.sign[i] = 1;
            else if (v == -1) out.sign[i] = -1;
            else return false;
            out.target[i] = j;
            used[j] = true;
        }
        if (out.target[i] == -1) return false;
    }
    return true;
}

}  // namespace superflow

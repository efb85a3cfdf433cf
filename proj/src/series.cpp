#include "superflow/series.hpp"

#include <cmath>

#include "superflow/errors.hpp"

namespace superflow {

namespace {

Rat at(const Series& a, int i) { return i < static_cast<int>(a.size()) ? a[i] : Rat(0); }

}  // namespace

Series series_add(const Series& a, const Series& b) {
    Series r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = at(a, i) + at(b, i);
    return r;
}

Series series_scale(const Series& a, const Rat& c) {
    Series r = a;
    for (auto& x : r) x *= c;
    return r;
}

Series series_mul(const Series& a, const Series& b, int n) { return generic::mul(a, b, n); }

Series series_inv(const Series& a, int n) { return generic::inv(a, n); }

Series series_div(const Series& a, const Series& b, int n) { return series_mul(a, series_inv(b, n), n); }

Series series_pow(const Series& a, const Rat& p, int n) { return generic::pow(a, p, n); }

Series series_exp(const Series& a, int n) {
    if (!a.empty() && a[0] != 0) throw DomainError("series exp needs zero constant term");
    Series f(n);
    if (n == 0) return f;
    f[0] = 1;
    for (int k = 1; k < n; ++k) {
        Rat s = 0;
        for (int j = 1; j <= k; ++j) s += Rat(j) * at(a, j) * f[k - j];
        f[k] = s / k;
    }
    return f;
}

Series series_compose(const Series& f, const Series& g, int n) {
    if (!g.empty() && g[0] != 0) throw DomainError("inner series must vanish at 0");
    Series r(n), pw(n);
    if (n == 0) return r;
    pw[0] = 1;
    for (int k = 0; k < static_cast<int>(f.size()) && k < n; ++k) {
        for (int i = 0; i < n; ++i) r[i] += f[k] * pw[i];
        pw = series_mul(pw, g, n);
    }
    return r;
}

Series series_derivative(const Series& a) {
    Series r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rat(static_cast<long>(i)));
    return r;
}

Series series_truncate(Series a, int n) {
    a.resize(n);
    return a;
}

double series_eval(const Series& a, double t) {
    double acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
}

std::string to_string(const Series& a, const std::string& var) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        Rat c = a[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (mono.empty()) out += to_string(c);
        else if (c == 1) out += mono;
        else out += to_string(c) + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

//--- QuadExt ----------------------------------------------------------------

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    adopt(o);
    a += o.a;
    b += o.b;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    adopt(o);
    a -= o.a;
    b -= o.b;
    return *this;
}

void QuadExt::adopt(const QuadExt& o) {
    if (o.b == 0) return;
    if (b != 0 && d != o.d) throw DomainError("mixed quadratic extensions");
    d = o.d;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    if (b != 0 && o.b != 0 && d != o.d) throw DomainError("mixed quadratic extensions");
    long dd = b != 0 ? d : o.d;
    Rat na = a * o.a + b * o.b * Rat(dd);
    Rat nb = a * o.b + b * o.a;
    a = na;
    b = nb;
    d = dd;
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    // multiply by the conjugate
    Rat norm = o.a * o.a - o.b * o.b * Rat(o.d);
    *this *= QuadExt(o.a / norm, -o.b / norm, o.d);
    return *this;
}

double QuadExt::to_double() const { return superflow::to_double(a) + superflow::to_double(b) * std::sqrt(double(d)); }

std::string to_string(const QuadExt& q) {
    if (q.b == 0) return to_string(q.a);
    std::string s = q.a == 0 ? "" : to_string(q.a) + (q.b < 0 ? " - " : " + ");
    Rat b = q.a == 0 ? q.b : abs(q.b);
    return s + to_string(b) + "*sqrt(" + std::to_string(q.d) + ")";
}

}  // namespace superflow

#pragma once

#include <string>
#include <vector>

#include "superflow/errors.hpp"
#include "superflow/mpoly.hpp"

namespace superflow {

// Truncated power series c[0] + c[1]t + ... with exact coefficients.
using Series = std::vector<Rat>;

Series series_add(const Series& a, const Series& b);
Series series_scale(const Series& a, const Rat& c);
Series series_mul(const Series& a, const Series& b, int n);
Series series_inv(const Series& a, int n);  // a[0] != 0
Series series_div(const Series& a, const Series& b, int n);
// a^p for rational p; a[0] must be 1.
Series series_pow(const Series& a, const Rat& p, int n);
Series series_exp(const Series& a, int n);  // a[0] must be 0
// f(g(t)); g[0] must be 0.
Series series_compose(const Series& f, const Series& g, int n);
Series series_derivative(const Series& a);
Series series_truncate(Series a, int n);
double series_eval(const Series& a, double t);
std::string to_string(const Series& a, const std::string& var = "t");

//--- a + b·√d over the rationals ---------------------------------------------

struct QuadExt {
    Rat a, b;
    long d = 2;

    QuadExt() = default;
    QuadExt(const Rat& a_, const Rat& b_ = 0, long d_ = 2) : a(a_), b(b_), d(d_) {}
    explicit QuadExt(long v) : a(v) {}

    static QuadExt sqrt_of(long d) { return QuadExt(0, 1, d); }

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);
    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    QuadExt operator-() const { return QuadExt(-a, -b, d); }
    bool operator==(const QuadExt& o) const { return a == o.a && b == o.b; }
    bool is_zero() const { return a == 0 && b == 0; }
    double to_double() const;

private:
    void adopt(const QuadExt& o);
};

std::string to_string(const QuadExt& q);

//--- the same truncated arithmetic over any field T constructible from Rat ------------

namespace generic {

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, int n) {
    std::vector<T> r(n, T(Rat(0)));
    for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <class T>
std::vector<T> inv(const std::vector<T>& a, int n) {
    if (a.empty() || a[0] == T(Rat(0))) throw DomainError("series inverse needs a nonzero constant term");
    std::vector<T> r(n, T(Rat(0)));
    if (n == 0) return r;
    r[0] = T(Rat(1)) / a[0];
    for (int k = 1; k < n; ++k) {
        T s(Rat(0));
        for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

// a^p for rational p, a[0] = 1; from a·f' = p·a'·f
template <class T>
std::vector<T> pow(const std::vector<T>& a, const Rat& p, int n) {
    if (a.empty() || !(a[0] == T(Rat(1)))) throw DomainError("rational power needs constant term 1");
    std::vector<T> f(n, T(Rat(0)));
    if (n == 0) return f;
    f[0] = T(Rat(1));
    for (int k = 1; k < n; ++k) {
        T s(Rat(0));
        for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s += T(p * j - (k - j)) * a[j] * f[k - j];
        f[k] = s / T(Rat(k));
    }
    return f;
}

}  // namespace generic

}  // namespace superflow

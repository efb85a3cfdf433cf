#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace superflow {

using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
double to_double(const Rat& q);

inline constexpr int kMaxVars = 12;

// Exponent vector; unused slots stay zero.
struct Monomial {
    std::array<int32_t, kMaxVars> e{};

    int total() const;
    bool operator==(const Monomial&) const = default;
    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial quotient(const Monomial& o) const;  // this / o, requires o | this
};

// Graded lex, larger first: iteration order of MPoly is the canonical print order.
struct GrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class MPoly {
public:
    using Terms = std::map<Monomial, Rat, GrlexDesc>;

    MPoly() = default;
    explicit MPoly(int nvars);
    MPoly(int nvars, const Rat& c);

    static MPoly var(int nvars, int i);
    static MPoly monomial(int nvars, const Monomial& m, const Rat& c);

    int nvars() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;      // -1 for zero
    int min_degree() const;  // -1 for zero
    bool is_homogeneous() const;
    bool is_constant() const;
    Rat constant_term() const;
    Rat coeff(const Monomial& m) const;
    const Monomial& leading_monomial() const;
    const Rat& leading_coeff() const;
    int degree_in(int var) const;

    void add_term(const Monomial& m, const Rat& c);

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rat& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rat& c) { return a *= c; }
    friend MPoly operator*(const Rat& c, MPoly a) { return a *= c; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly operator-() const;
    bool operator==(const MPoly& o) const;

    MPoly pow(int k) const;
    MPoly derivative(int var) const;
    MPoly truncated(int max_degree) const;
    MPoly homogeneous_part(int d) const;
    // Same polynomial viewed in a larger variable set (new variables appended).
    MPoly extended(int nvars) const;

    template <class T>
    T eval(std::span<const T> x) const;

private:
    int n_ = 0;
    Terms terms_;
};

MPoly mul_truncated(const MPoly& a, const MPoly& b, int max_degree);

// p(images[0], ..., images[n-1]); all images share one variable count.
MPoly substitute(const MPoly& p, std::span<const MPoly> images);

// Exact quotient a / b; throws if b does not divide a.
MPoly divide_exact(const MPoly& a, const MPoly& b);

std::vector<std::pair<int, MPoly>> homogeneous_components(const MPoly& p);

std::vector<std::string> default_var_names(int n);
std::string to_string(const MPoly& p, std::span<const std::string> vars);
std::string to_string(const MPoly& p);

// Grammar: sums of signed terms; a term is a product of factors separated by '*';
// a factor is an integer, integer/integer, a variable, or a parenthesised sum,
// optionally raised with '^' to a non-negative integer.
MPoly parse_poly(std::string_view text, std::span<const std::string> vars);
MPoly parse_poly(std::string_view text, std::initializer_list<std::string_view> vars);

// All exponent vectors of total degree d in n variables, grlex descending.
std::vector<Monomial> monomials_of_degree(int n, int d);

template <class T>
T MPoly::eval(std::span<const T> x) const {
    T acc = T(0);
    for (const auto& [m, c] : terms_) {
        T term = T(to_double(c));
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m.e[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

template <>
Rat MPoly::eval<Rat>(std::span<const Rat> x) const;

}  // namespace superflow

#include "superflow/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "superflow/errors.hpp"

namespace superflow {

Rat make_rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(std::string_view text) {
    std::string s(text);
    Rat q;
    if (q.set_str(s, 10) != 0 || s.empty()) throw ParseError("bad rational '" + s + "'", 0);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

double to_double(const Rat& q) { return q.get_d(); }

//--- Monomial

int Monomial::total() const {
    int t = 0;
    for (int v : e) t += v;
    return t;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

bool GrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

//--- MPoly basics

MPoly::MPoly(int nvars) : n_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw DomainError("variable count out of range");
}

MPoly::MPoly(int nvars, const Rat& c) : MPoly(nvars) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::var(int nvars, int i) {
    MPoly p(nvars);
    Monomial m;
    m.e[i] = 1;
    p.terms_.emplace(m, Rat(1));
    return p;
}

MPoly MPoly::monomial(int nvars, const Monomial& m, const Rat& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

int MPoly::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.total(); }

int MPoly::min_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

bool MPoly::is_homogeneous() const { return degree() == min_degree(); }

bool MPoly::is_constant() const { return degree() <= 0; }

Rat MPoly::constant_term() const { return coeff(Monomial{}); }

Rat MPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

const Monomial& MPoly::leading_monomial() const {
    if (terms_.empty()) throw DomainError("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

const Rat& MPoly::leading_coeff() const {
    if (terms_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

int MPoly::degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
    return d;
}

void MPoly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MPoly& MPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars(), b.nvars()));
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
    return r;
}

MPoly mul_truncated(const MPoly& a, const MPoly& b, int max_degree) {
    MPoly r(std::max(a.nvars(), b.nvars()));
    for (const auto& [ma, ca] : a.terms()) {
        int da = ma.total();
        for (const auto& [mb, cb] : b.terms())
            if (da + mb.total() <= max_degree) r.add_term(ma * mb, ca * cb);
    }
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

bool MPoly::operator==(const MPoly& o) const { return terms_ == o.terms_; }

MPoly MPoly::pow(int k) const {
    if (k < 0) throw DomainError("negative power");
    MPoly result(n_, Rat(1)), base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(n_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial d = m;
        d.e[var] -= 1;
        r.terms_.emplace(d, c * m.e[var]);
    }
    return r;
}

MPoly MPoly::truncated(int max_degree) const {
    MPoly r(n_);
    for (const auto& [m, c] : terms_)
        if (m.total() <= max_degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

MPoly MPoly::homogeneous_part(int d) const {
    MPoly r(n_);
    for (const auto& [m, c] : terms_)
        if (m.total() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

MPoly MPoly::extended(int nvars) const {
    if (nvars < n_) throw DomainError("cannot shrink variable set");
    MPoly r = *this;
    r.n_ = nvars;
    return r;
}

template <>
Rat MPoly::eval<Rat>(std::span<const Rat> x) const {
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
        Rat term = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < m.e[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

//--- composition and division

MPoly substitute(const MPoly& p, std::span<const MPoly> images) {
    if (static_cast<int>(images.size()) < p.nvars()) throw DomainError("too few images for substitution");
    int n = images.empty() ? 0 : images[0].nvars();
    // cache powers per variable
    std::vector<std::vector<MPoly>> powers(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) powers[i].push_back(MPoly(n, Rat(1)));
    auto power = [&](int i, int k) -> const MPoly& {
        auto& v = powers[i];
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images[i]);
        return v[k];
    };
    MPoly r(n);
    for (const auto& [m, c] : p.terms()) {
        MPoly term(n, c);
        for (int i = 0; i < p.nvars(); ++i)
            if (m.e[i]) term = term * power(i, m.e[i]);
        r += term;
    }
    return r;
}

MPoly divide_exact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    int n = std::max(a.nvars(), b.nvars());
    MPoly q(n), r = a;
    const Monomial& lb = b.leading_monomial();
    const Rat& cb = b.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        if (!lb.divides(lr)) throw DomainError("inexact polynomial division");
        MPoly t = MPoly::monomial(n, lr.quotient(lb), r.leading_coeff() / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

std::vector<std::pair<int, MPoly>> homogeneous_components(const MPoly& p) {
    std::vector<std::pair<int, MPoly>> out;
    for (const auto& [m, c] : p.terms()) {
        int d = m.total();
        if (out.empty() || out.back().first != d) out.emplace_back(d, MPoly(p.nvars()));
        out.back().second.add_term(m, c);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
    std::vector<Monomial> out;
    Monomial m;
    // recursive fill, first variable takes the largest exponent first
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            m.e[i] = left;
            out.push_back(m);
            m.e[i] = 0;
            return;
        }
        for (int k = left; k >= 0; --k) {
            m.e[i] = k;
            self(self, i + 1, left - k);
        }
        m.e[i] = 0;
    };
    if (n == 0) {
        if (d == 0) out.push_back(m);
        return out;
    }
    rec(rec, 0, d);
    return out;
}

//--- printing

std::vector<std::string> default_var_names(int n) {
    if (n <= 3) {
        std::vector<std::string> v{"x", "y", "z"};
        v.resize(n);
        return v;
    }
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

std::string to_string(const MPoly& p, std::span<const std::string> vars) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rat a = abs(c);
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (int i = 0; i < p.nvars(); ++i) {
            if (!m.e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty())
            out += to_string(a);
        else if (a == 1)
            out += mono;
        else
            out += to_string(a) + "*" + mono;
    }
    return out;
}

std::string to_string(const MPoly& p) {
    auto names = default_var_names(p.nvars());
    return to_string(p, names);
}

//--- parsing

namespace {

class Parser {
public:
    Parser(std::string_view s, std::span<const std::string> vars) : s_(s), vars_(vars) {}

    MPoly run() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        MPoly r = sum();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    std::string_view s_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;

    int n() const { return static_cast<int>(vars_.size()); }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MPoly sum() {
        MPoly acc(n());
        bool first = true;
        for (;;) {
            skip();
            bool neg = false;
            if (eat('+')) {
            } else if (eat('-')) {
                neg = true;
            } else if (!first) {
                break;
            }
            first = false;
            MPoly t = product();
            if (neg) acc -= t;
            else acc += t;
        }
        return acc;
    }

    MPoly product() {
        MPoly acc = power();
        for (;;) {
            skip();
            if (eat('*')) {
                acc = acc * power();
            } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
                acc = acc * power();  // implicit multiplication
            } else {
                break;
            }
        }
        return acc;
    }

    MPoly power() {
        MPoly base = factor();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    MPoly factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly r = sum();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rat q(Int(std::string(s_.substr(start, pos_ - start))));
            std::size_t save = pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                std::size_t ds = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (ds == pos_) fail("expected denominator");
                Int den(std::string(s_.substr(ds, pos_ - ds)));
                if (den == 0) fail("zero denominator");
                q /= Rat(den);
            } else {
                pos_ = save;
            }
            return MPoly(n(), q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            for (int i = 0; i < n(); ++i)
                if (vars_[i] == name) return MPoly::var(n(), i);
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

MPoly parse_poly(std::string_view text, std::span<const std::string> vars) {
    if (static_cast<int>(vars.size()) > kMaxVars) throw DomainError("too many variables");
    return Parser(text, vars).run();
}

MPoly parse_poly(std::string_view text, std::initializer_list<std::string_view> vars) {
    std::vector<std::string> v(vars.begin(), vars.end());
    return parse_poly(text, std::span<const std::string>(v));
}

}  // namespace superflow

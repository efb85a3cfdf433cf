#include "superflow/exactalg.hpp"

namespace superflow {

//--- RatFunc

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(num_.nvars(), Rat(1)) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("zero denominator");
}

MPoly RatFunc::as_polynomial() const {
    if (!is_polynomial()) throw DomainError("rational function is not a polynomial");
    return num_ * (1 / den_.constant_term());
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DomainError("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

bool RatFunc::operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

RatFunc RatFunc::derivative(int var) const {
    if (den_.is_constant()) return RatFunc(num_.derivative(var), den_);
    return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::string to_string(const RatFunc& f, std::span<const std::string> vars) {
    if (f.is_polynomial()) return to_string(f.as_polynomial(), vars);
    return "(" + to_string(f.num(), vars) + ")/(" + to_string(f.den(), vars) + ")";
}

//--- VectorField

VectorField::VectorField(std::vector<MPoly> numerators)
    : VectorField(numerators, MPoly(numerators.empty() ? 1 : numerators[0].nvars(), Rat(1))) {}

VectorField::VectorField(std::vector<MPoly> numerators, MPoly denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
    if (num_.empty()) throw DomainError("empty vector field");
    int n = static_cast<int>(num_.size());
    if (den_.is_zero()) throw DomainError("zero denominator");
    if (!den_.is_homogeneous()) throw DomainError("denominator is not homogeneous");
    for (auto& p : num_) {
        if (p.nvars() > n) throw DomainError("component uses more variables than the field dimension");
        p = p.extended(n);
    }
    den_ = den_.extended(std::max(n, den_.nvars()));
    std::optional<int> d;
    for (const auto& p : num_) {
        if (p.is_zero()) continue;
        if (!p.is_homogeneous()) throw DomainError("component is not homogeneous");
        if (d && *d != p.degree()) throw DomainError("components have different degrees");
        d = p.degree();
    }
    degree_ = d ? *d - den_.degree() : 0;
}

std::vector<MPoly> VectorField::polynomial_components() const {
    if (!is_polynomial()) throw DomainError("vector field has a non-constant denominator");
    Rat inv = 1 / den_.constant_term();
    std::vector<MPoly> out;
    for (const auto& p : num_) out.push_back(p * inv);
    return out;
}

bool VectorField::operator==(const VectorField& o) const {
    if (dim() != o.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (!(num_[i] * o.den_ == o.num_[i] * den_)) return false;
    return true;
}

bool VectorField::is_zero() const {
    for (const auto& p : num_)
        if (!p.is_zero()) return false;
    return true;
}

std::string to_string(const VectorField& v, std::span<const std::string> vars) {
    std::string out;
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += " • ";
        out += to_string(v.component(i), vars);
    }
    return out;
}

std::string to_string(const VectorField& v) {
    auto names = default_var_names(v.dim());
    return to_string(v, names);
}

//--- linear changes of variables

MPoly compose_linear(const MPoly& p, const RatMatrix& m) {
    if (m.rows != m.cols || m.rows != p.nvars()) throw DomainError("matrix dimension does not match variable count");
    int n = p.nvars();
    SignedPerm sp;
    if (as_signed_perm(m, sp)) {
        MPoly r(n);
        for (const auto& [mono, c] : p.terms()) {
            Monomial out;
            int s = 1;
            for (int i = 0; i < n; ++i) {
                out.e[sp.target[i]] += mono.e[i];
                if (sp.sign[i] < 0 && (mono.e[i] & 1)) s = -s;
            }
            r.add_term(out, s > 0 ? c : Rat(-c));
        }
        return r;
    }
    std::vector<MPoly> images;
    for (int i = 0; i < n; ++i) {
        MPoly row(n);
        for (int j = 0; j < n; ++j) row += MPoly::var(n, j) * m(i, j);
        images.push_back(std::move(row));
    }
    return substitute(p, images);
}

VectorField conjugate_field(const VectorField& v, const RatMatrix& m) {
    int n = v.dim();
    if (m.rows != n || m.cols != n) throw DomainError("matrix dimension does not match field dimension");
    RatMatrix inv = inverse(m);
    std::vector<MPoly> moved;
    for (const auto& p : v.numerators()) moved.push_back(compose_linear(p, m));
    std::vector<MPoly> out(n, MPoly(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inv(i, j) != 0) out[i] += moved[j] * inv(i, j);
    return VectorField(std::move(out), compose_linear(v.denominator().extended(n), m));
}

RatFunc divergence(const VectorField& v) {
    int n = v.dim();
    MPoly s(n);
    for (int i = 0; i < n; ++i) s += v.numerator(i).derivative(i);
    const MPoly& d = v.denominator();
    if (d.is_constant()) return RatFunc(s, d);
    MPoly t(n);
    for (int i = 0; i < n; ++i) t += v.numerator(i) * d.derivative(i);
    return RatFunc(s * d - t, d * d);
}

VectorField curl3(const VectorField& v) {
    if (v.dim() != 3) throw DomainError("curl requires dimension 3");
    auto c = v.polynomial_components();
    return VectorField({c[2].derivative(1) - c[1].derivative(2), c[0].derivative(2) - c[2].derivative(0),
                        c[1].derivative(0) - c[0].derivative(1)});
}

MPoly reduce_mod_sphere(const MPoly& p) {
    if (p.nvars() != 3) throw DomainError("sphere reduction expects variables (x,y,z)");
    MPoly r(3);
    MPoly base = MPoly(3, Rat(1)) - MPoly::var(3, 0).pow(2) - MPoly::var(3, 1).pow(2);
    std::vector<MPoly> powers{MPoly(3, Rat(1))};
    for (const auto& [m, c] : p.terms()) {
        int k = m.e[2];
        while (static_cast<int>(powers.size()) <= k / 2) powers.push_back(powers.back() * base);
        Monomial rest = m;
        rest.e[2] = k % 2;
        r += powers[k / 2] * MPoly::monomial(3, rest, c);
    }
    return r;
}

}  // namespace superflow

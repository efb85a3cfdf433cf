#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superflow/matrix.hpp"
#include "superflow/mpoly.hpp"

namespace superflow {

// Unreduced quotient; equality by cross-multiplication.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(MPoly num);
    RatFunc(MPoly num, MPoly den);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Polynomial value when the denominator is a nonzero constant.
    MPoly as_polynomial() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool operator==(const RatFunc& o) const;
    RatFunc derivative(int var) const;

    template <class T>
    T eval(std::span<const T> x) const {
        return num_.eval(x) / den_.eval(x);
    }

private:
    MPoly num_, den_;
};

std::string to_string(const RatFunc& f, std::span<const std::string> vars);

// n homogeneous components N_i / D sharing one denominator.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::vector<MPoly> numerators);
    VectorField(std::vector<MPoly> numerators, MPoly denominator);

    int dim() const { return static_cast<int>(num_.size()); }
    int degree() const { return degree_; }
    const std::vector<MPoly>& numerators() const { return num_; }
    const MPoly& numerator(int i) const { return num_[i]; }
    const MPoly& denominator() const { return den_; }
    bool is_polynomial() const { return den_.is_constant(); }
    RatFunc component(int i) const { return RatFunc(num_[i], den_); }
    // Polynomial components (divided by a constant denominator); throws otherwise.
    std::vector<MPoly> polynomial_components() const;

    bool operator==(const VectorField& o) const;
    bool is_zero() const;

    template <class T>
    std::vector<T> eval(std::span<const T> x) const {
        T d = den_.eval(x);
        std::vector<T> out;
        out.reserve(num_.size());
        for (const auto& p : num_) out.push_back(p.eval(x) / d);
        return out;
    }

private:
    std::vector<MPoly> num_;
    MPoly den_;
    int degree_ = 0;
};

std::string to_string(const VectorField& v, std::span<const std::string> vars);
std::string to_string(const VectorField& v);

MPoly compose_linear(const MPoly& p, const RatMatrix& m);
VectorField conjugate_field(const VectorField& v, const RatMatrix& m);
RatFunc divergence(const VectorField& v);
VectorField curl3(const VectorField& v);
MPoly reduce_mod_sphere(const MPoly& p);


}  // namespace superflow

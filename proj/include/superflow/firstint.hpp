#pragma once

#include <vector>

#include "superflow/exactalg.hpp"

namespace superflow {

struct IntegralBasis {
    int degree = 0;
    std::vector<MPoly> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

// Kernel of W ↦ Σ W_{x_i}·num(V_i) on degree-d forms.
IntegralBasis polynomial_first_integrals(const VectorField& v, int degree);

// Σ W_{x_i}·num(V_i) == 0
bool is_polynomial_first_integral(const MPoly& w, const VectorField& v);

// Wden·Σ ∂_i(Wnum)·V_i − Wnum·Σ ∂_i(Wden)·V_i ≡ 0; both parts must be homogeneous.
bool rational_first_integral_check(const MPoly& wnum, const MPoly& wden, const VectorField& v);

// Σ_j y_j^s / p'(y_j) as a quotient over the Vandermonde product Π_{i<k}(y_i − y_k).
RatFunc lagrange_sum(int n, int s);
// Sum vanishes for 0 <= s <= n−2 and equals 1 for s = n−1.
bool lagrange_identity_check(int n);

// ϖ_i = (n+1)x_i² − 2x_i(x_1+…+x_n)
VectorField q_field(int n);
// 𝒬_ℓ = x_ℓ^{n−2} Π_{i<j; i,j≠ℓ}(x_i − x_j), ℓ = 1..n
MPoly q_integral(int n, int ell);

}  // namespace superflow

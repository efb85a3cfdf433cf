#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>

#include "superflow/series.hpp"

namespace superflow {

//--- Jacobi ---------------------------------------------------------------------

struct JacobiTriple {
    double u = 0, k = 0;
    double sn = 0, cn = 1, dn = 1;
};

// AGM / descending Landen; extra_steps continues the descent past convergence.
JacobiTriple jacobi_snckdn(double u, double k, int extra_steps = 0);
// Exact Maclaurin coefficients of sn(u | m = k²): index i ↦ coefficient of u^i.
Series jacobi_sn_series(const Rat& m, int n);

//--- Weierstrass ℘ with g2 = 16/27, g3 = 0 ------------------------------------------------

inline const Rat kWeierstrassG2{16, 27};

// Real half-period ω; the lattice is 2ωℤ + 2iωℤ.
double weierstrass_omega();
// Same constant by quadrature of dx/√(4x³ − g2·x) over [℘(ω), ∞).
double weierstrass_omega_by_quadrature();
// Laurent coefficients: index i ↦ coefficient of t^{i−2}, for powers up to max_power.
Series weierstrass_laurent(int max_power);

struct WpValue {
    std::complex<double> p, dp;
};

// Any complex t off the lattice (|t − lattice| >= 1e−6).
WpValue weierstrass_p(std::complex<double> t);
// Υ(t) = ℘(t + iω), real for real t, and its derivative.
double upsilon(double t);
double upsilon_prime(double t);
// Υ(u − v) from ¼[(Υ′(u)+℘′(v))/(Υ(u)−℘(v))]² − Υ(u) − ℘(v)
double weierstrass_addition(double u, double v);

//--- Dixonian sm, cm -----------------------------------------------------------------------

std::pair<double, double> dixon_smcm(double u);
Series dixon_sm_series(int n);
Series dixon_cm_series(int n);

//--- D5 abelian integral -------------------------------------------------------------------

// 𝒲(x) = (x−1)(x⁴−4x³−14x²−4x+1), roots ξ_j = tan(π/4 + 2πj/5)
double d5_W(double x);

struct D5Context {
    double Omega = 0;              // fundamental period: total circle / 5
    double Xi = 0;                 // ∫_1^∞
    std::array<double, 5> xi{};    // ξ_0..ξ_4
    std::array<double, 5> arcs{};  // ∫ between consecutive roots, in circle order from ξ_0 upward
};
const D5Context& d5_context();

// ∫_a^b (t²+1)/|𝒲(t)|^{4/5} dt along the real line; a, b may be ±∞.
double d5_integral(double a, double b);
// α(x) = ∫_1^x, reduced to [−5Ω/2, 5Ω/2).
double d5_alpha(double x);
// Inverse of α; nullopt at the pole (t ≡ Ξ).
std::optional<double> d5_k(double t);
// Möbius shift x ↦ (x cos κ_j + sin κ_j)/(−x sin κ_j + cos κ_j), κ_j = 2πj/5
std::optional<double> d5_mobius(int j, double x);

}  // namespace superflow

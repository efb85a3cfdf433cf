#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "superflow/exactalg.hpp"

namespace superflow {

//--- the field 𝐎_n -------------------------------------------------------------------

// ϖ_1 = Π_{j≥2} x_j Π_{2≤i<j≤n}(x_i² − x_j²), ϖ_{k+1} = ϖ_k(x_2, …, x_n, x_1); n odd, 3 ≤ n ≤ 7.
VectorField build_hyperoct_field(int n);

// 𝒬^s = Σ x_j^{2s} is a first integral for 1 ≤ s ≤ n−1, 𝒬^n is not, and the
// Jacobian of 𝒬^1..𝒬^{n−1} has full rank at a fixed rational point.
bool power_sum_integrals_check(int n);

//--- symmetric data of an orbit ---------------------------------------------------------

struct XiVector {
    int n = 3;
    std::vector<Rat> xi;         // ξ_1..ξ_{n−1}: elementary symmetric functions of the x_j²
    std::vector<double> seed;    // a point realizing xi, empty if none
    bool admissible = true;
    std::vector<std::string> failures;  // names of the failing inequalities
};

XiVector make_xi(int n, std::vector<Rat> xi, std::vector<double> seed = {});
// Exact ξ's of a rational point; the point becomes the seed.
XiVector xi_from_point(std::span<const Rat> x);

// Necessary conditions only: E_k ≥ 0, the chain E_k^{1/k} ≥ E_{k+1}^{1/(k+1)},
// E_k² ≥ E_{k−1}E_{k+1} and the Rosset quartics, for all indices below n.
XiVector admissibility_check(XiVector xi);

//--- univariate polynomials -------------------------------------------------------------

struct UniPoly {
    std::vector<Rat> c;  // c[i] is the coefficient of X^i

    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rat eval(const Rat& x) const;
    double eval(double x) const;
    UniPoly derivative() const;
    bool operator==(const UniPoly&) const = default;
};

std::string to_string(const UniPoly& p, const std::string& var = "x");
UniPoly to_unipoly(const MPoly& p, int var);  // p must involve no other variable
UniPoly uni_gcd(UniPoly a, UniPoly b);         // monic, or empty for a = b = 0

// Sylvester resultant and discriminant Π_{i<j}(r_i − r_j)² of polynomials whose
// coefficients (low to high) are polynomials in outer variables.
MPoly resultant(const std::vector<MPoly>& f, const std::vector<MPoly>& g);
MPoly discriminant(const std::vector<MPoly>& f);

// Σ_m c_m X^m with weights w_i on the variables has all terms of the given weight.
bool weighted_homogeneous(const MPoly& p, std::span<const int> weights, int weight);

//--- triple reduction ----------------------------------------------------------------

// H(Z) = Z^n − ξ_1 Z^{n−1} + ξ_2 Z^{n−2} − … + ξ_{n−1} Z
UniPoly h_polynomial(const XiVector& xi);
// 𝒟_n(𝔵) = 4𝔵·discrim_Z(H(Z) − 𝔵) in the variables (ξ_1, …, ξ_{n−1}, 𝔵).
MPoly discriminant_reduction_symbolic(int n);
// 𝒟_n for exact ξ's, a polynomial in 𝔵 of degree n.
UniPoly discriminant_reduction(const XiVector& xi);

// 729·𝒟_3(−Υ/27) at ξ_1 = 1, ξ_2 = (1−ξ)/2, in the variables (ξ, Υ).
MPoly d3_octahedral_chart();
// The printed form of 𝒟_5 in (ξ_1, ξ_2, ξ_3, ξ_4, 𝔵).
MPoly d5_printed_form();

struct CoefficientMismatch {
    Monomial m;
    Rat computed, reference;
};
std::vector<CoefficientMismatch> coefficient_mismatches(const MPoly& computed, const MPoly& reference);

//--- the singular orbit through (1, 1, 1, 2, q) -------------------------------------------

struct SingularFactorReport {
    Rat q;
    UniPoly d5;
    bool has_double_factor = false;  // (𝔵 − 4q²)² | 𝒟_5
    UniPoly cubic;                   // 𝒟_5 / (𝔵 − 4q²)²
    bool cubic_shares_root = false;  // cubic(4q²) = 0
    Rat cubic_discriminant;
    bool cubic_repeated_root = false;
};

SingularFactorReport singular_factor_check(const Rat& q);
// Discriminant of the residual cubic as a polynomial in q, for generic q.
MPoly singular_cubic_discriminant();

//--- genus 2 to elliptic ---------------------------------------------------------------

struct Genus2Report {
    bool weierstrass_identity = false;    // ψ_X²·f_{a,b} = 4℘³ − g2℘ − g3, ℘ = ψ + b³/6 − 3ab/2
    bool modular_discriminant = false;    // g2³ − 27g3² = (729/64)a⁴(b²−8a)²(b²−6a)³
    bool curve_discriminant = false;      // discrim(f_{a,b}/2) = ¼a⁶(b²−8a)³(b²−6a)
    bool octahedral_specialization = false;  // a = 1−ξ, b = −2 gives 4ψ³ + (20−36ξ)ψ² − 27(2ξ−1)(ξ−1)²ψ
    bool ok() const {
        return weierstrass_identity && modular_discriminant && curve_discriminant && octahedral_specialization;
    }
};

Genus2Report genus2_reduction_check();

//--- numerical triple reduction --------------------------------------------------------

struct ReductionRun {
    int n = 3;
    XiVector xi;
    UniPoly D;
    std::vector<double> t, upsilon, upsilon_prime;  // Υ = H(P_j) = Π P_j
    std::vector<std::vector<double>> P, p;          // per sample, per coordinate
    std::vector<double> level_residual;     // max_j |H(P_j) − Υ|
    std::vector<double> motion_residual;    // max_j |Υ′ − 2p_jϖ_j(p)H′(P_j)| / max(1, |Υ′|)
    std::vector<double> integral_residual;  // max_ℓ |σ_ℓ(P) − ξ_ℓ| / max(1, |ξ_ℓ|)
    double energy_drift = 0;                // max |Υ′² − 𝒟_n(Υ)| / max(1, |Υ′²|)
    int turning_points = 0;                 // sign changes of Υ′
    double max_level() const;
    double max_motion() const;
    double max_integral() const;
};

// Υ″ = 𝒟_n′(Υ)/2 from the seed's (Υ, Υ′), then P_j from H(X) = Υ and p_j = ±√P_j
// continued along the flow; samples are equally spaced on [0, t_end].
ReductionRun triple_reduction_integrate(const XiVector& xi, double t_end, double rtol, int samples = 200);

// A point with the given ξ's and Π x_j² = 𝔵: x_j = √P_j for the roots in increasing
// order, with the sign of x_1 chosen so that Υ′ has the given sign.
std::vector<double> point_from_level(const XiVector& xi, double xfrak, int direction);

void write_csv(std::ostream& os, const ReductionRun& run);

}  // namespace superflow

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "superflow/exactalg.hpp"
#include "superflow/series.hpp"

namespace superflow {

using cplx = std::complex<double>;

//--- fields with explicit flows ----------------------------------------------------

VectorField tetra_field();   // yz • xz • xy
VectorField octa_field();    // (y³z−yz³ • z³x−zx³ • x³y−xy³)/(x²+y²+z²)
VectorField dixon_field();   // x²−2xy • y²−2xy
VectorField d5_field();      // the 𝔻₅ field with denominator x²+y²
// tetra | octa | dixon | d5
VectorField named_field(const std::string& id);

//--- evaluation records ---------------------------------------------------------------

struct BranchRecord {
    std::string radical;
    cplx argument, value;
};

struct ClosedFormContext {
    std::string theorem;
    std::vector<double> inputs;
    double varsigma = 0;
    std::optional<double> level, modulus;
    std::optional<cplx> K, L, T, J;
    std::vector<BranchRecord> branches;
};

// x² > z² > y² (Jacobi, modulus √((x²−z²)/(x²−y²))) or z = x, x² > y² (trigonometric)
double tetra_U(double x, double y, double z, ClosedFormContext* ctx = nullptr);
// 0 < x/3 < y < 3x; returns (λ(x,y), λ(y,x))
std::pair<double, double> lambda_dixon(double x, double y, ClosedFormContext* ctx = nullptr);
// level 2 orbit with x = y + z, x, y, z >= 0
cplx octa_J_singular(double x, double y, double z);
double octa_V_singular(double x, double y, double z, ClosedFormContext* ctx = nullptr);
// level 9/5 orbit around (1,0,0): x, y, z >= 0, y >= z, x² >= (2/3)(x²+y²+z²)
double octa_V_generic(double x, double y, double z, ClosedFormContext* ctx = nullptr);
// the 0-homogeneous K and L of the generic orbit
double octa_K(double x, double y, double z);
double octa_L(double x, double y, double z);

//--- Cardano ----------------------------------------------------------------------------

// Cube root u of the depressed cubic: principal square root of the discriminant term
// (negated when flip_sqrt) and principal cube root label P; Q, R carry u·e^{±2πi/3}.
struct CardanoRule {
    bool flip_sqrt = false;
};

struct CardanoRoots {
    std::array<cplx, 3> roots;  // P, Q, R
    cplx sum, pair_sum, product, square_sum;
};

// c3·X³ + c2·X² + c1·X + c0
CardanoRoots cardano_branch(const std::array<double, 4>& coeffs, const CardanoRule& rule = {});

//--- series verification --------------------------------------------------------------

struct SeriesRow {
    int power = 0;
    std::string closed_form, series, reference;  // reference is empty when no fixture exists
};

struct SeriesMatchReport {
    std::string theorem, ray, quantity;
    int order = 0;
    bool exact = false;
    std::vector<SeriesRow> rows;
    std::string max_exact_mismatch;      // exact reports
    double max_numeric_mismatch = 0;     // |closed form − truncated series| at the sample points
    std::vector<double> sample_t;
    std::optional<double> invariant_deviation;  // | |J| − claimed modulus |
    bool pass = false;
};

// thm2 | thm-s4 | thm-s4-trig | thm-spec | thm4 | thm-d10
SeriesMatchReport verify_theorem(const std::string& theorem, int order);
std::vector<std::string> theorem_ids();

// The abelian-function route: k(α(−1) + ⁵√8·x) = −1 + L(x) solved formally from the
// first-order equation for k; returns (γ(x,−x)/x, γ(x,−x)/γ(−x,x)) through x^n.
std::pair<Series, Series> d5_gamma_series(int n);
SeriesMatchReport d5_gamma_verify(int n);

// Exact series of the closed forms on their documented rays (index i ↦ t^i).
Series tetra_U_series(int n);             // U(3t, t, 2t)
Series tetra_U_trig_series(int n);        // U(5t, 4t, 5t)
std::pair<Series, Series> lambda_series(int n);  // (λ(2t,t), λ(t,2t))
Series octa_generic_ratio_series(int n);  // V(t√2, t, 0)/(t√2), via the ℘ Laurent series

}  // namespace superflow

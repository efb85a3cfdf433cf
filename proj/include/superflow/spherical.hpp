#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superflow/exactalg.hpp"

namespace superflow {

//--- sphere moments -------------------------------------------------------------------

// Average of Π x_i^{a_i} over the unit sphere S^{n−1}, n = exponents.size().
Rat sphere_monomial_average(std::span<const int> exponents);
// Average of a polynomial over the sphere of the given radius in R^{nvars}.
Rat sphere_average(const MPoly& p, const Rat& radius = Rat(1));

//--- spherical constants ------------------------------------------------------------

struct SphereOptions {
    Rat radius = Rat(1);
    double tol = 1e-11;             // absolute error target of each surface average
    std::size_t max_triangles = 4'000'000;
    int seeds = 2000;               // starting points for the maximization of |V|²
};

struct SphericalConstants {
    std::optional<double> alpha0;  // undefined for the zero field
    double alpha1 = 0;
    Rat alpha2_exact;
    double alpha2 = 0;
    double alpha_inf = 0;
    std::array<double, 3> argmax{};
    std::optional<double> omega0, omega1, omega_inf;
    std::string method0 = "quadrature", method1 = "quadrature", method2 = "exact", method_inf = "optimization";
    double error0 = 0, error1 = 0;  // quadrature error estimates of the mean of ln|V| and of |V|
    std::size_t triangles = 0;
};

// Averages of |V|^v over the sphere, v = 0 (geometric), 1, 2, and the maximum of |V|.
SphericalConstants spherical_constants(const VectorField& v, const SphereOptions& opts = {});

// Adaptive cubature of f over the unit sphere S²; returns (mean value, error estimate).
struct SphereMean {
    double mean = 0, error = 0;
    std::size_t triangles = 0;
};
SphereMean sphere_mean(const std::function<double(const std::array<double, 3>&)>& f, double tol,
                       std::size_t max_triangles = 4'000'000);

//--- vanish points ------------------------------------------------------------------

// Zeros on the unit sphere of a field tangent to spheres, clustered within 1e−7.
std::vector<std::array<double, 3>> sphere_zeros(const VectorField& v, int seeds = 4000);
int sphere_vanish_count(const VectorField& v, int seeds = 4000);

//--- the surface of the octahedral field -------------------------------------------

// ℰ(X,Y,Z): the implicit equation of the image of S² under (yz(y²−z²), xz(z²−x²), xy(x²−y²)).
MPoly surface_polynomial();
// ℰ(yz(y²−z²), xz(z²−x²), xy(x²−y²)) ≡ 0 modulo x²+y²+z²−1.
bool surface_identity_check(const MPoly& e);

//--- extremal ratios on the circle ---------------------------------------------------

// For the planar field yF • (−x)F, F = ax³+bx²y+cxy²+dy³: β₂ is the circle average of F²,
// β_∞ the maximum of |F| on the unit circle.
Rat circle_beta2(const Rat& a, const Rat& b, const Rat& c, const Rat& d);
double circle_beta_inf(const std::array<double, 4>& f);
double extremal_ratio(const std::array<double, 4>& f);  // β_∞² / β₂

enum class ExtremalMode { min, max };

struct ExtremalResult {
    ExtremalMode mode{};
    double value = 0;
    std::array<double, 4> optimizer{};  // (a, b, c, d), b = 0 after rotation
    double certificate = 0;             // gradient norm of the reduced stationarity problem
    double search_value = 0;            // value found by the multistart search before polishing
};

ExtremalResult extremal_ratio_2_4(ExtremalMode mode, int starts = 48);

}  // namespace superflow

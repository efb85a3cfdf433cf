#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "superflow/exactalg.hpp"
#include "superflow/series.hpp"

namespace superflow {

//--- Taylor series of flows ---------------------------------------------------

enum class SeriesKind { projective, general };

// One homogeneous term num / den^den_power.
struct SeriesTerm {
    MPoly num;
    int den_power = 0;
};

struct FlowSeries {
    SeriesKind kind = SeriesKind::projective;
    int order = 0;
    MPoly denominator;  // 1 for polynomial fields
    // components[j][k]: projective → the (k+1)-homogeneous term; general → f^{(k)}_j / k!
    std::vector<std::vector<SeriesTerm>> components;

    int dim() const { return static_cast<int>(components.size()); }
    bool is_polynomial() const { return denominator.is_constant(); }
    RatFunc term(int j, int k) const;
    // Polynomial value of a term; throws for rational series.
    MPoly poly_term(int j, int k) const;
    // Sum of all stored terms of component j (polynomial series only).
    MPoly truncated_sum(int j) const;
};

// ϖ^{(1)} = x_j, ϖ^{(i+1)} = (1/i)·Σ_k ∂_kϖ^{(i)}·V_k; rational fields keep the
// shared denominator as a power.
FlowSeries taylor_projective(const VectorField& v, int order);
// f^{(0)} = x_j, f^{(ℓ)} = Σ_i V_i ∂_i f^{(ℓ−1)}, stored divided by ℓ!.
FlowSeries taylor_general(const VectorField& v, int order);
// Same recurrence for arbitrary (inhomogeneous) polynomial components.
FlowSeries taylor_general(const std::vector<MPoly>& components, int order);
FlowSeries identity_series(int dim);

// Coefficients of t^1..t^N of component j along the ray x = direction·t
// (projective), or of t^0..t^N at the point (general).
template <class T>
std::vector<T> ray_coefficients(const FlowSeries& s, int j, const std::vector<T>& direction);
std::vector<Rat> ray_coefficients(const FlowSeries& s, int j, std::initializer_list<long> direction);

// φ(t·d) = t·φ^t(d) by coefficient recursion of x′ = V(x), x(0) = d, without the
// multivariate terms: index i ↦ coefficient of t^i, for i = 0..order.
template <class T>
std::vector<std::vector<T>> ray_series(const VectorField& v, const std::vector<T>& direction, int order);

// Lowest total degree of u_x(ϖ−x)+u_y(ϱ−y)+… + u over the components;
// nullopt when no residual appears up to order+1.
std::optional<int> pde_residual(const FlowSeries& s, const VectorField& v);

// The second-order determinant identity of three-dimensional projective flows,
// all terms of total degree <= order.
bool nonlinear_pde_residual(const FlowSeries& su, const FlowSeries& sv, const FlowSeries& sw, int order);

// ((N−1)xz, (M−1)yz, −z²); flow x(z+1)^{N−1}, y(z+1)^{M−1}, z/(z+1).
VectorField psi_field(int n, int m);

//--- numerical orbits -----------------------------------------------------------

struct OrbitOptions {
    bool negate = false;  // integrate x' = −V
    double atol = 0;      // 0 → rtol·1e−2
    long max_steps = 2000000;
};

struct OrbitTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> integral_drift;              // per monitor, max over the trace
    std::vector<std::vector<double>> drift_history;  // per row, per monitor
    long accepted = 0, rejected = 0;
};

OrbitTrace integrate_orbit(const VectorField& v, const std::vector<double>& x0, double t_end, double rtol,
                           const std::vector<MPoly>& monitors = {}, const OrbitOptions& opt = {});
std::vector<double> flow_point(const VectorField& v, const std::vector<double>& x0, double t, double rtol);
double semigroup_check(const VectorField& v, const std::vector<double>& x0, double s, double t, double rtol);

void write_csv(std::ostream& os, const OrbitTrace& trace);

//--- planar projections -----------------------------------------------------------

enum class ProjectionMode { stereographic, orthogonal };
std::string to_string(ProjectionMode m);

struct Grid {
    double a0 = -4, a1 = 4, b0 = -4, b1 = 4;
    int resolution = 21;
};

struct PlanarSample {
    double alpha, beta, pi, theta;
};

struct PlanarField {
    ProjectionMode mode = ProjectionMode::stereographic;
    std::vector<PlanarSample> samples;
    // stereographic: the rescaled field 2ϖ+ασ • 2ϱ+βσ; orthogonal: Π̂ • Θ̂
    std::optional<std::pair<RatFunc, RatFunc>> closed_form;
    // stereographic only: (α²+β²+4)/8 times the rescaled field
    std::optional<std::pair<RatFunc, RatFunc>> true_projection;
    double max_closed_form_deviation = 0;
    // orthogonal mode for (yz,xz,xy): closed form equals αβ • α²−1/(16α²)
    std::optional<bool> reference_match;
};

// Inverse charts: (α,β) ↦ point on the sphere / on x²−y²=1.
std::array<double, 3> stereographic_inverse(double alpha, double beta);
std::array<double, 2> stereographic_chart(const std::array<double, 3>& p);
std::array<double, 3> orthogonal_inverse(double alpha, double beta);

PlanarField planar_projection(const VectorField& v, ProjectionMode mode, const Grid& grid, double tau_v = 1e-9);
// max over circle points of |Π(α−a)+Θ(β−b)| / (r·|Π,Θ|): zero when the circle is invariant
double circle_invariance_residual(const PlanarField& f, double ca, double cb, double r, int samples = 360);

void write_csv(std::ostream& os, const PlanarField& f);

//--- trigonometric Beltrami-type fields ---------------------------------------------

enum class TrigField { T_tetra, O_octa, D_dihedral };
TrigField parse_trig_field(const std::string& id);
std::string to_string(TrigField f);
int trig_field_dim(TrigField f);

// Value, gradient and Hessian of every component at a point, by forward jets.
struct TrigJet {
    std::vector<double> value;
    std::vector<std::array<double, 3>> gradient;
    std::vector<std::array<std::array<double, 3>, 3>> hessian;
};
TrigJet trig_field_jet(TrigField f, const std::vector<double>& point);

struct BeltramiReport {
    TrigField field{};
    int points = 0;
    std::optional<double> max_curl_deviation;  // |curl F − F|, three-dimensional fields
    double max_divergence = 0;
    double max_helmholtz_deviation = 0;  // |∇²F + F|
};

BeltramiReport beltrami_probe(TrigField f, int points = 1000, unsigned seed = 1);

}  // namespace superflow

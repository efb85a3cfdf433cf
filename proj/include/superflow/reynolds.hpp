#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "superflow/exactalg.hpp"
#include "superflow/groups.hpp"

namespace superflow {

inline constexpr double kVerifyTol = 1e-9;

// orbit: signed-permutation orbit sums; averaging: Σ_γ γ⁻¹∘X∘γ on every basis monomial.
enum class ReynoldsPath { automatic, orbit, averaging };

struct VFSpace {
    std::string group;
    int degree = 0;
    std::vector<VectorField> basis;  // rows of the reduced echelon form
    int dim() const { return static_cast<int>(basis.size()); }
};

VectorField reynolds_project(const FiniteGroup& g, const VectorField& v);
MPoly reynolds_project(const FiniteGroup& g, const MPoly& p);

VFSpace invariant_vf_basis(const FiniteGroup& g, int degree, ReynoldsPath path = ReynoldsPath::automatic);
std::vector<MPoly> invariant_form_basis(const FiniteGroup& g, int degree, ReynoldsPath path = ReynoldsPath::automatic);

enum class SuperflowMode { polynomial, projective };
std::string_view to_string(SuperflowMode m);

struct SuperflowReport {
    std::string group;
    SuperflowMode mode = SuperflowMode::polynomial;
    int degree = 0;
    int dim = 0;
    std::optional<VectorField> field;
    std::optional<MPoly> denominator;
    int denominator_dim = 0;  // projective mode: dimension of degree ℓ−2 invariant forms
    bool solenoidal = false;
    bool sphere_tangent = false;
    bool unique = false;
    std::string failure;  // empty on success
};

// Scans ℓ = 2,4,... (every ℓ >= 1 with include_odd) up to max_degree; throws DomainError if no invariant field exists.
SuperflowReport find_superflow(const FiniteGroup& g, SuperflowMode mode, int max_degree, bool include_odd = false);

// Approx groups: max over 20 seeded random points of |γ⁻¹V(γx) − V(x)| / (1 + |V(x)|).
double invariance_residual(const FiniteGroup& g, const VectorField& v, unsigned seed = 7);
bool verify_invariant_field(const FiniteGroup& g, const VectorField& v, unsigned seed = 7);

// tetra_full, tetra_full_solenoidal, octa, octa_solenoidal_sphere
int closed_form_dims(std::string_view family, int ell);

struct SolenoidalSphereDims {
    int solenoidal = 0;
    int sphere_tangent = 0;
    int both = 0;
};
SolenoidalSphereDims solenoidal_and_sphere_dims(const FiniteGroup& g, int ell);

// Integer coefficients with content 1 and positive leading coefficient.
MPoly primitive_part(const MPoly& p);
VectorField primitive_part(const VectorField& v);

}  // namespace superflow

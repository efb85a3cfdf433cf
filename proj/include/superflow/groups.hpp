#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "superflow/matrix.hpp"

namespace superflow {

enum class GroupKind { exact, approx };

inline constexpr double kGroupTol = 1e-9;

struct FiniteGroup {
    std::string name;
    GroupKind kind = GroupKind::exact;
    int dim = 0;
    // Exact groups fill the Rat lists; every group fills the real lists.
    std::vector<RatMatrix> generators, elements;
    std::vector<RealMatrix> real_generators, real_elements;

    int order() const { return static_cast<int>(real_elements.size()); }
    bool is_exact() const { return kind == GroupKind::exact; }
    bool contains(const RatMatrix& m) const;
    bool contains(const RealMatrix& m) const;
    // True when every element is a signed permutation (exact groups only).
    bool signed_permutations() const;
};

FiniteGroup close_group(const std::vector<RatMatrix>& generators, int max_order = 10000, std::string name = {});
FiniteGroup close_group(const std::vector<RealMatrix>& generators, int max_order = 10000, std::string name = {});

// klein4, T, That, O, Ohat, Sn1(n), dihedral(2d+1), hyperoct(n), hyperoct_full(n), icosa
FiniteGroup builtin_group(std::string_view name, int param = 0);
std::vector<std::string> builtin_group_names();

// Elements common to both exact groups.
FiniteGroup intersect(const FiniteGroup& a, const FiniteGroup& b);

// Entry d is the dimension of degree-d invariant forms, d = 0..max_degree.
std::vector<int> molien_dims(const FiniteGroup& g, int max_degree);

}  // namespace superflow

#pragma once

#include "kmc/rootspace.hpp"

namespace kmc {

// Positive real roots of Z_s(alpha) up to a height cap.
struct Subsystem {
    RootSystem ambient;
    Vec defining_root;
    std::vector<Vec> members;  // canonical order (height, then lex)
    Coeff cap = 0;
};

// <beta, alpha∨> = 0 and alpha+beta not a real root.
bool is_strictly_orthogonal(const RootSystem& sys, const Vec& alpha, const Vec& beta);

// All positive real roots of height <= cap passing is_strictly_orthogonal.
// For large caps on hyperbolic systems this scans the orthogonal sublattice
// directly instead of enumerating the full root system.
Subsystem compute_Zs(const RootSystem& sys, const Vec& alpha, Coeff height_cap);

struct ClosureReport {
    bool ok = true;
    long long pairs_checked = 0;
    std::vector<std::pair<Vec, Vec>> violations;
};

// beta+gamma real with height <= cap implies membership.
ClosureReport check_closure_under_sum(const Subsystem& zs);

// s_beta(gamma) stays in Z_s(alpha); checked by membership below the cap and
// by the defining predicate above it.
ClosureReport check_weyl_closure(const Subsystem& zs);

bool subsystem_contains(const Subsystem& zs, const Vec& v);

}  // namespace kmc

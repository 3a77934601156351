#pragma once

#include <array>
#include <optional>

#include "kmc/centralizer.hpp"

namespace kmc {

class DimensionMismatch : public KmcError {
public:
    explicit DimensionMismatch(const std::string& what) : KmcError(what) {}
};

class FamilyViolation : public KmcError {
public:
    FamilyViolation(const std::string& what, long long n) : KmcError(what), n(n) {}
    long long n;
};

class InsufficientData : public KmcError {
public:
    explicit InsufficientData(const std::string& what) : KmcError(what) {}
};

struct FarkasCertificate {
    Vec y;  // y^T A >= 0 on all columns, y^T b < 0
};

// Result of the weak-independence test: either a separating certificate or a
// dependency witness A x = b r with x >= 0 integral and r > 0 integral.
struct WeakIndependence {
    bool independent = false;
    FarkasCertificate cert;  // valid iff independent
    Vec x;                   // valid iff dependent
    Coeff r = 0;
};

WeakIndependence weak_independence(const std::vector<Vec>& columns, const Vec& target);
bool verify_certificate(const FarkasCertificate& cert, const std::vector<Vec>& columns,
                        const Vec& target);

struct BasisEntry {
    Vec root;
    bool accepted = false;
    FarkasCertificate cert;  // when accepted
    Vec x;                   // when rejected: root * r = sum x_i * basis_i
    Coeff r = 0;
};

struct BasisCandidate {
    std::vector<Vec> roots;       // the accepted weakly independent family
    std::vector<BasisEntry> log;  // one entry per subsystem member, in order
    Coeff cap = 0;
};

// Height-ordered greedy basis search: accept each member not in the
// nonnegative integer span of the previously accepted ones.
BasisCandidate find_basis(const Subsystem& zs);

// Rank-3 ambient: at most 2 weakly independent roots can exist, so the search
// stops as soon as two are found.
BasisCandidate rank3_early_stop(const Subsystem& zs);

// Per-coordinate quadratic polynomials in the family parameter n. Values are
// p[i][0] + p[i][1] n + p[i][2] n^2 (exact rationals, integral on range).
struct PolynomialFamily {
    std::vector<std::array<Rat, 3>> coords;
    long long n_min = 0;
    long long n_max = -1;           // -1: unbounded
    int period = 1;                 // congruence-class period of the fit
    std::optional<std::pair<int, int>> swap_symmetry;  // coordinate pair swapped in mirror roots
};

Vec evaluate_family(const PolynomialFamily& fam, long long n);

struct FamilyReport {
    bool ok = true;
    std::vector<long long> verified_n;
    std::string failure;
};

// For each n in range: integrality, realness, strict orthogonality to the
// defining root, membership below the cap, and weak independence from the
// lower-height family members. Throws FamilyViolation on the first failure.
FamilyReport verify_family(const PolynomialFamily& fam, const Subsystem& zs, long long n_lo,
                           long long n_hi);

// Fit per-coordinate quadratics over congruence classes of period 1 or 2,
// validating on held-out members; nullopt = NoFit.
std::optional<std::vector<PolynomialFamily>> fit_quadratic_family(const std::vector<Vec>& seq);

}  // namespace kmc

#pragma once

#include <optional>

#include "kmc/centralizer.hpp"

namespace kmc {

class NoEliminableVariable : public KmcError {
public:
    NoEliminableVariable()
        : KmcError("no unit coefficient available for integral variable elimination") {}
};

class ZeroTarget : public KmcError {
public:
    ZeroTarget() : KmcError("factored solver requires a nonzero target value") {}
};

class DegenerateForm : public KmcError {
public:
    DegenerateForm() : KmcError("linear factors are proportional; solution set not finite") {}
};

class ModulusTooLarge : public KmcError {
public:
    explicit ModulusTooLarge(Coeff m)
        : KmcError("congruence modulus " + std::to_string(m) + " exceeds 64") {}
};

// a y^2 + b yz + c z^2 after content reduction; `scale` relates the reduced
// form back to the ternary |beta|^2 (ternary value = scale * binary value).
struct BinaryQuadraticForm {
    Coeff a = 0, b = 0, c = 0;
    Rat scale = 1;
};

struct EliminationResult {
    BinaryQuadraticForm form;
    Vec relation;        // content-reduced B*alpha; relation . x = 0
    int eliminated = 0;  // index substituted out
    int vars[2] = {0, 0};  // surviving coordinate indices, in order (y, z)
    Coeff target = 0;      // reduced right-hand side for form = target
    bool target_integral = true;  // false: |beta|^2 = target_norm insoluble outright
};

EliminationResult eliminate(const Symmetrization& sym, const Vec& alpha, Coeff target_norm);

struct LinearForm {
    Coeff p = 0, q = 0;  // p y + q z
};

// Factorization over the integers; nullopt = irreducible (non-square
// discriminant).
std::optional<std::pair<LinearForm, LinearForm>> factor_form(const BinaryQuadraticForm& f);

// All integer (y, z) with L1(y,z) * L2(y,z) = value, via divisor pairs.
std::vector<std::pair<Coeff, Coeff>> solve_factored(const LinearForm& l1, const LinearForm& l2,
                                                    Coeff value);

struct CongruenceCertificate {
    enum Kind { NoSolutions, AllForceRealSum } kind = NoSolutions;
    Coeff modulus = 0;
    Coeff target = 0;          // reduced norm value certified
    long long admissible = 0;  // residue tuples passing orthogonality + norm
};

// Exhaustive residue scan modulo m of { relation . x = 0, x^T Br x = t } where
// Br is the content-reduced bilinear form. NoSolutions: no residue tuple
// qualifies. AllForceRealSum: every qualifying tuple satisfies the
// divisibility conditions that make alpha+beta a real root.
std::optional<CongruenceCertificate> congruence_scan(const RootSystem& sys, const Vec& alpha,
                                                     Coeff reduced_target, Coeff m);

struct NormCertificate {
    Coeff norm = 0;  // reduced norm value
    enum Method { IntegralityGap, Factored, Congruence } method = Congruence;
    std::optional<EliminationResult> elim;
    std::optional<CongruenceCertificate> cong;
    std::vector<Vec> surviving_roots;  // genuine members found by enumeration of solutions
};

struct SmallCentralizerResult {
    enum Kind { Empty, A1, TwoRoots, Undecided } kind = Undecided;
    std::vector<Vec> roots;                // for A1 / TwoRoots
    std::vector<NormCertificate> certs;    // for Empty / A1: one per candidate norm
};

// Rank-3 pipeline: enumerate at a modest cap, then certify per candidate norm
// via factored enumeration or congruence certificates.
SmallCentralizerResult certify_small_centralizer(const RootSystem& sys, const Vec& alpha);

}  // namespace kmc

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmc/types.hpp"

namespace kmc {

class GcmValidationError : public KmcError {
public:
    GcmValidationError(const std::string& kind, int i, int j)
        : KmcError(kind + " at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"),
          kind(kind), row(i), col(j) {}
    std::string kind;  // DiagonalNotTwo | PositiveOffDiagonal | ZeroAsymmetry
    int row, col;
};

class NotSymmetrizable : public KmcError {
public:
    NotSymmetrizable() : KmcError("NotSymmetrizable: no positive diagonal D with DA symmetric") {}
};

class Disconnected : public KmcError {
public:
    Disconnected() : KmcError("Disconnected: classification is defined per connected component") {}
};

class UnrecognizedComponent : public KmcError {
public:
    explicit UnrecognizedComponent(const std::string& what) : KmcError(what) {}
};

class RankOutOfRange : public KmcError {
public:
    explicit RankOutOfRange(const std::string& what) : KmcError(what) {}
};

// A validated generalized Cartan matrix. Convention: A_ij = 2(a_i,a_j)/(a_i,a_i),
// so B = D·A with d_i = |a_i|^2/2 is the symmetrized bilinear form.
struct Gcm {
    int rank = 0;
    IMat a;
};

struct Symmetrization {
    Vec d;   // positive integers, gcd 1 per connected component
    IMat b;  // b = diag(d) * a, symmetric
};

enum class SystemClass { Finite, Affine, Hyperbolic, Indefinite };

struct SystemType {
    SystemClass cls;
    std::string name;  // standard label when known (finite/affine), else empty
};

struct DynkinEdge {
    int i, j;       // i < j
    int lij, lji;   // -A_ij and -A_ji
};

struct DynkinDiagram {
    int rank;
    std::vector<DynkinEdge> edges;
};

Gcm validate_gcm(const IMat& m);
Symmetrization symmetrize(const Gcm& g);
bool is_symmetrizable(const Gcm& g);

DynkinDiagram diagram_of(const Gcm& g);
std::string to_dot(const Gcm& g);

std::vector<std::vector<int>> components(const IMat& a);
Gcm submatrix(const Gcm& g, const std::vector<int>& idx);

// Classification of a connected GCM per principal-minor trichotomy.
SystemType classify(const Gcm& g);
SystemClass classify_class(const Gcm& g);

// Name a diagram whose connected components are all of finite or affine type,
// e.g. "A_3^(1)+2A_1^(1)". The empty diagram yields "0".
std::string identify_diagram(const Gcm& g);
// Single connected component; returns nullopt when indefinite.
std::optional<std::string> identify_connected(const Gcm& g);

// Reference Cartan matrices. Families: 'A','B','C','D','E','F','G'.
Gcm finite_gcm(char family, int l);
// twist 1: untwisted X_l^(1).  twist 2/3: A_{2l}^(2) ("a2even"), A_{2l-1}^(2)
// ("a2odd"), D_{l+1}^(2) ("d2"), E_6^(2) ("e62"), D_4^(3) ("d43") via affine_gcm_twisted.
Gcm affine_gcm_untwisted(char family, int l);
Gcm affine_gcm_twisted(const std::string& kind, int l);

// Lexicographically minimal vertex-ordering key; equal keys <=> isomorphic
// labeled diagrams.
std::vector<signed char> canonical_key(const IMat& a);

// All connected hyperbolic GCMs with rank in [rmin, rmax], up to diagram
// isomorphism, canonically ordered.
std::vector<Gcm> enumerate_hyperbolic_catalog(int rmin, int rmax, bool symmetrizable_only);

// Diagram automorphisms: permutations p with a[p[i]][p[j]] == a[i][j].
std::vector<std::vector<int>> diagram_automorphisms(const IMat& a);

}  // namespace kmc

#pragma once

#include "kmc/cartan.hpp"

namespace kmc {

class CriterionInapplicable : public KmcError {
public:
    CriterionInapplicable()
        : KmcError("real-root criterion applies only to finite, affine or hyperbolic type") {}
};

class NotRealRoot : public KmcError {
public:
    explicit NotRealRoot(const std::string& what) : KmcError(what) {}
};

class SameRay : public KmcError {
public:
    SameRay() : KmcError("root string undefined for beta = ±alpha") {}
};

// A validated root system: GCM + symmetrization + classification of every
// connected component.
struct RootSystem {
    Gcm g;
    Symmetrization sym;
    std::vector<SystemClass> component_classes;  // parallel to components()
    SystemClass cls;  // worst component class (Finite < Affine < Hyperbolic < Indefinite)
};

RootSystem make_system(const Gcm& g);

// v^T B w; exact integer in this normalization.
Coeff bilinear(const Symmetrization& sym, const Vec& v, const Vec& w);
Coeff norm2(const Symmetrization& sym, const Vec& v);

// <v, alpha∨> = 2 (v, alpha) / (alpha, alpha); requires alpha real (integer
// result guaranteed), throws NotRealRoot otherwise.
Coeff coroot_pairing(const RootSystem& sys, const Vec& v, const Vec& alpha);

// |v|^2 > 0 and k_i |a_i|^2 / |v|^2 integral for all i.
bool is_real_root(const RootSystem& sys, const Vec& v);

// s_alpha(v) = v - <v,alpha∨> alpha.
Vec reflect(const RootSystem& sys, const Vec& alpha, const Vec& v);

struct RootString {
    Coeff p = 0, q = 0;  // beta - p*alpha ... beta + q*alpha all real roots
};

RootString root_string(const RootSystem& sys, const Vec& alpha, const Vec& beta);

// All positive real roots of height <= cap, ordered by (height, lex).
std::vector<Vec> enumerate_positive_real_roots(const RootSystem& sys, Coeff height_cap);

}  // namespace kmc

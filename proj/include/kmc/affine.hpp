#pragma once

#include <set>

#include "kmc/basis.hpp"

namespace kmc {

class NotAffine : public KmcError {
public:
    NotAffine() : KmcError("operation requires a connected affine system") {}
};

class InvalidClass : public KmcError {
public:
    explicit InvalidClass(const std::string& what) : KmcError(what) {}
};

enum class RootClass { Long, Short, Medium, Any };

// An affine system together with its finite base: delta, the twist r, the
// deleted node and the finite subsystem spanned by the remaining simples,
// partitioned into length classes.
struct AffineRealization {
    RootSystem sys;
    std::string name;  // identified diagram name
    int twist = 1;
    bool half_tier = false;  // the even-rank twist-2 A family with three tiers
    Vec delta;
    int deleted = 0;              // removed node index
    std::set<Vec> base_roots;     // base real roots, both signs, embedded
    Coeff base_short = 0, base_long = 0;  // ambient norms within the base
    std::vector<Coeff> tiers;     // distinct real-root norms, ascending
};

AffineRealization build_affine(const Gcm& g);

// Case formula for real-root membership (delta-translates of the finite base
// with twist-dependent periods); must agree with the generic criterion.
bool affine_real_root_predicate(const AffineRealization& ar, const Vec& v);

// Lowest canonical-order positive root of the given length class.
Vec class_representative(const AffineRealization& ar, RootClass cls);

// Compute Z_s of a class representative, extract a basis, identify its
// diagram; fails loudly if the basis found below the cap is not a complete
// finite-or-affine diagram.
std::string affine_centralizer_type(const AffineRealization& ar, RootClass cls);

}  // namespace kmc

#pragma once

#include "kmc/basis.hpp"

namespace kmc {

class CandidateOutsideSubsystem : public KmcError {
public:
    CandidateOutsideSubsystem()
        : KmcError("candidate basis root is not a member of the subsystem") {}
};

// Polyhedral cone over exact integers: intersection of half-spaces
// {x : <x,h> >= 0} (dot-product covectors), with the dual description
// attached: minimal extreme rays modulo the lineality space.
struct Cone {
    int dim = 0;
    std::vector<Vec> halfspaces;
    std::vector<Vec> rays;       // primitive, canonical mod lineality, sorted
    std::vector<Vec> lineality;  // reduced-echelon primitive basis
};

// H-to-V conversion: minimal generating rays and a lineality basis of the
// intersection of the half-spaces. Rays are canonically scaled (primitive
// integers, reduced modulo the lineality space) and sorted.
Cone double_description(const std::vector<Vec>& halfspaces, int dim);

// V-to-H conversion: supporting half-spaces of cone(rays) + span(lineality).
// Implicit equations (when the cone is not full-dimensional) are emitted as
// opposite half-space pairs.
std::vector<Vec> cone_halfspaces(const std::vector<Vec>& rays, const std::vector<Vec>& lineality,
                                 int dim);

// v - ((v,alpha)/(alpha,alpha)) alpha, cleared to the smallest positive
// integer multiple; the result pairs to zero with the alpha-coroot, and is
// returned unchanged when v is already orthogonal to alpha.
Vec project_to_wall(const RootSystem& sys, const Vec& alpha, const Vec& v);

// Chamber cut out by the simple coroots, with its rays attached.
Cone fundamental_chamber(const RootSystem& sys);

// Cone cut out by the coroots of the given real roots.
Cone candidate_chamber(const RootSystem& sys, const std::vector<Vec>& gamma);

enum class Verdict { Certified, CutBy, Inconclusive };

struct CertificationResult {
    Verdict verdict = Verdict::Inconclusive;
    Vec cutting_root;                 // set when verdict == CutBy
    long long chambers_explored = 0;
    std::vector<Vec> reached;         // projected chamber rays on the wall
};

// Chamber-reflection completeness certificate for a candidate basis of
// zs = Z_s(alpha): breadth-first reflection of the fundamental chamber across
// walls whose roots lie outside the subsystem, tracking projected ray images
// on the wall of the defining root. Certified when every projected ray of the
// candidate cone lies in the conical hull of the reached projections; CutBy
// when some member's wall strictly cuts the candidate cone; Inconclusive when
// the chamber budget runs out.
CertificationResult certify_basis(const RootSystem& sys, const Subsystem& zs,
                                  const BasisCandidate& gamma, long long chamber_budget);

}  // namespace kmc

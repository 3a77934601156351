#include "kmc/cones.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace kmc {

namespace {

using BVec = std::vector<BigInt>;

BigInt bdot(const BVec& a, const Vec& b) {
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void bprimitive(BVec& v) {
    BigInt g = 0;
    for (const auto& e : v) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(e));
    if (g > 1)
        for (auto& e : v) e /= g;
}

Vec to_vec(const BVec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].convert_to<Coeff>();
    return r;
}

Vec primitive(Vec v) {
    Coeff g = 0;
    for (Coeff e : v) g = std::gcd(g, e < 0 ? -e : e);
    if (g > 1)
        for (auto& e : v) e /= g;
    return v;
}

struct RayRec {
    BVec v;
    std::vector<bool> active;  // one flag per processed half-space
};

// Reduced row echelon form over the rationals; returns (rows, pivot columns).
std::pair<RMat, std::vector<int>> rref(const std::vector<BVec>& basis, int dim) {
    RMat m;
    for (const auto& b : basis) {
        RVec row(dim);
        for (int j = 0; j < dim; ++j) row[j] = Rat(BigInt(b[j]));
        m.push_back(std::move(row));
    }
    std::vector<int> pivots;
    size_t row = 0;
    for (int col = 0; col < dim && row < m.size(); ++col) {
        size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rat pv = m[row][col];
        for (int j = 0; j < dim; ++j) m[row][j] /= pv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int j = 0; j < dim; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return {m, pivots};
}

Vec rational_to_primitive(const RVec& v) {
    BigInt l = 1;
    for (const auto& q : v) l = boost::multiprecision::lcm(l, denominator(q));
    BVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = numerator(v[i]) * (l / denominator(v[i]));
    bprimitive(w);
    return to_vec(w);
}

// Canonical representative of a ray modulo the lineality space: zero out the
// lineality pivot coordinates, then scale to a primitive integer vector.
Vec reduce_mod_lineality(const BVec& ray, const RMat& lin_rref, const std::vector<int>& pivots) {
    RVec x(ray.size());
    for (size_t i = 0; i < ray.size(); ++i) x[i] = Rat(BigInt(ray[i]));
    for (size_t r = 0; r < lin_rref.size(); ++r) {
        Rat f = x[pivots[r]];
        if (f == 0) continue;
        for (size_t j = 0; j < x.size(); ++j) x[j] -= f * lin_rref[r][j];
    }
    bool zero = std::all_of(x.begin(), x.end(), [](const Rat& q) { return q == 0; });
    if (zero) return Vec();
    return rational_to_primitive(x);
}

}  // namespace

Cone double_description(const std::vector<Vec>& halfspaces, int dim) {
    if (dim < 0) throw KmcError("negative dimension");
    for (const auto& h : halfspaces)
        if ((int)h.size() != dim) throw RankMismatch("half-space covector dimension mismatch");
    std::vector<BVec> lin;
    for (int i = 0; i < dim; ++i) {
        BVec e(dim, 0);
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<RayRec> rays;
    int processed = 0;
    for (const auto& h : halfspaces) {
        if (is_zero(h)) {
            // trivial bound: keeps everything, but track the slot
            for (auto& r : rays) r.active.push_back(true);
            ++processed;
            continue;
        }
        int piv = -1;
        for (size_t i = 0; i < lin.size(); ++i)
            if (bdot(lin[i], h) != 0) {
                piv = (int)i;
                break;
            }
        if (piv >= 0) {
            BVec l = lin[piv];
            lin.erase(lin.begin() + piv);
            BigInt d = bdot(l, h);
            if (d < 0)
                for (auto& e : l) e = -e;
            d = bdot(l, h);
            for (auto& m : lin) {
                BigInt c = bdot(m, h);
                if (c != 0) {
                    for (size_t j = 0; j < m.size(); ++j) m[j] = m[j] * d - l[j] * c;
                    bprimitive(m);
                }
            }
            for (auto& r : rays) {
                BigInt c = bdot(r.v, h);
                if (c != 0) {
                    for (size_t j = 0; j < r.v.size(); ++j) r.v[j] = r.v[j] * d - l[j] * c;
                    bprimitive(r.v);
                }
                r.active.push_back(true);
            }
            RayRec nr;
            nr.v = std::move(l);
            nr.active.assign(processed, true);
            nr.active.push_back(false);
            rays.push_back(std::move(nr));
        } else {
            std::vector<RayRec> keep;
            std::vector<size_t> pos, neg;
            std::vector<BigInt> val(rays.size());
            for (size_t i = 0; i < rays.size(); ++i) val[i] = bdot(rays[i].v, h);
            for (size_t i = 0; i < rays.size(); ++i) {
                if (val[i] > 0) pos.push_back(i);
                else if (val[i] < 0) neg.push_back(i);
            }
            auto subset = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
                for (size_t k = 0; k < a.size(); ++k)
                    if (a[k] && !b[k]) return false;
                return true;
            };
            std::vector<RayRec> combos;
            for (size_t p : pos)
                for (size_t n : neg) {
                    std::vector<bool> common(processed);
                    for (int k = 0; k < processed; ++k)
                        common[k] = rays[p].active[k] && rays[n].active[k];
                    bool adjacent = true;
                    for (size_t o = 0; o < rays.size() && adjacent; ++o) {
                        if (o == p || o == n) continue;
                        if (subset(common, rays[o].active)) adjacent = false;
                    }
                    if (!adjacent) continue;
                    RayRec nr;
                    nr.v.resize(dim);
                    for (int j = 0; j < dim; ++j)
                        nr.v[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
                    bprimitive(nr.v);
                    if (std::all_of(nr.v.begin(), nr.v.end(),
                                    [](const BigInt& e) { return e == 0; }))
                        continue;
                    nr.active = std::move(common);
                    nr.active.push_back(true);
                    combos.push_back(std::move(nr));
                }
            for (size_t i = 0; i < rays.size(); ++i) {
                if (val[i] < 0) continue;
                rays[i].active.push_back(val[i] == 0);
                keep.push_back(std::move(rays[i]));
            }
            for (auto& c : combos) keep.push_back(std::move(c));
            rays = std::move(keep);
        }
        ++processed;
    }

    Cone cone;
    cone.dim = dim;
    cone.halfspaces = halfspaces;
    auto [lin_rref, pivots] = rref(lin, dim);
    for (const auto& row : lin_rref) cone.lineality.push_back(rational_to_primitive(row));
    std::sort(cone.lineality.begin(), cone.lineality.end());
    std::set<Vec> seen;
    for (const auto& r : rays) {
        Vec v = reduce_mod_lineality(r.v, lin_rref, pivots);
        if (!v.empty() && seen.insert(v).second) cone.rays.push_back(std::move(v));
    }
    std::sort(cone.rays.begin(), cone.rays.end());
    return cone;
}

std::vector<Vec> cone_halfspaces(const std::vector<Vec>& rays, const std::vector<Vec>& lineality,
                                 int dim) {
    std::vector<Vec> constraints = rays;
    for (const auto& l : lineality) {
        constraints.push_back(l);
        constraints.push_back(negate(l));
    }
    Cone dual = double_description(constraints, dim);
    std::vector<Vec> out = dual.rays;
    // dual lineality = implicit equations of the primal cone
    for (const auto& l : dual.lineality) {
        out.push_back(l);
        out.push_back(negate(l));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vec project_to_wall(const RootSystem& sys, const Vec& alpha, const Vec& v) {
    Coeff na = norm2(sys.sym, alpha);
    if (na <= 0 || !is_real_root(sys, alpha)) throw NotRealRoot("projection wall must be a real root");
    Coeff p = bilinear(sys.sym, v, alpha);
    if (p == 0) return v;
    Coeff g = std::gcd(p < 0 ? -p : p, na);
    Coeff scale = na / g, mult = p / g;
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = add_ck(mul_ck(scale, v[i]), -mul_ck(mult, alpha[i]));
    return r;
}

Cone fundamental_chamber(const RootSystem& sys) {
    std::vector<Vec> hs(sys.g.a.begin(), sys.g.a.end());
    return double_description(hs, sys.g.rank);
}

Cone candidate_chamber(const RootSystem& sys, const std::vector<Vec>& gamma) {
    int n = sys.g.rank;
    std::vector<Vec> hs;
    for (const auto& g : gamma) {
        Vec h(n);
        for (int i = 0; i < n; ++i) {
            Vec e(n, 0);
            e[i] = 1;
            h[i] = coroot_pairing(sys, e, g);
        }
        hs.push_back(std::move(h));
    }
    return double_description(hs, n);
}

CertificationResult certify_basis(const RootSystem& sys, const Subsystem& zs,
                                  const BasisCandidate& gamma, long long chamber_budget) {
    if (chamber_budget < 1) throw KmcError("chamber budget must be positive");
    for (const auto& g : gamma.roots)
        if (!subsystem_contains(zs, g)) throw CandidateOutsideSubsystem();
    const Vec& alpha = zs.defining_root;
    int n = sys.g.rank;

    CertificationResult trivial;
    if (gamma.roots.empty() && zs.members.empty()) {
        // empty candidate for an empty subsystem: nothing to certify
        trivial.verdict = Verdict::Certified;
        return trivial;
    }

    Cone cand = candidate_chamber(sys, gamma.roots);
    // the defining root lies on every candidate wall, so the candidate cone
    // contains the line through it
    for (const auto& g : gamma.roots)
        if (coroot_pairing(sys, alpha, g) != 0)
            throw KmcError("internal: candidate root not orthogonal to the defining root");

    CertificationResult res;

    // cut scan: a member whose wall takes both strict signs on the candidate
    // cone separates interior points, so the candidate cannot be a basis
    for (const auto& beta : zs.members) {
        bool has_pos = false, has_neg = false;
        for (const auto& s : cand.rays) {
            Coeff c = coroot_pairing(sys, s, beta);
            has_pos = has_pos || c > 0;
            has_neg = has_neg || c < 0;
        }
        for (const auto& l : cand.lineality)
            if (coroot_pairing(sys, l, beta) != 0) has_pos = has_neg = true;
        if (has_pos && has_neg) {
            res.verdict = Verdict::CutBy;
            res.cutting_root = beta;
            return res;
        }
    }

    // targets: projections of the candidate cone's generators onto the wall
    // of the defining root (zero projections are trivially reached)
    std::set<Vec> target_set;
    for (const auto& s : cand.rays) {
        Vec p = project_to_wall(sys, alpha, s);
        if (!is_zero(p)) target_set.insert(primitive(p));
    }
    for (const auto& l : cand.lineality) {
        Vec p = project_to_wall(sys, alpha, l);
        if (!is_zero(p)) {
            target_set.insert(primitive(p));
            target_set.insert(primitive(negate(p)));
        }
    }
    std::vector<Vec> targets(target_set.begin(), target_set.end());
    std::vector<bool> done(targets.size(), false);
    size_t remaining = targets.size();
    if (remaining == 0) {
        res.verdict = Verdict::Certified;
        return res;
    }

    Cone fund = fundamental_chamber(sys);
    std::set<Vec> reached_set;
    auto add_reached = [&](const Vec& v) {
        Vec p = project_to_wall(sys, alpha, v);
        if (is_zero(p)) return false;
        p = primitive(p);
        if (!reached_set.insert(p).second) return false;
        // keep the reached list a small generating set: skip rays already in
        // the conical hull of the current ones
        if (!weak_independence(res.reached, p).independent) return false;
        res.reached.push_back(p);
        return true;
    };
    // lineality directions of the chamber (affine ambient) are reflection
    // invariant; seed them with both signs
    for (const auto& l : fund.lineality) {
        add_reached(l);
        add_reached(negate(l));
    }

    auto update_targets = [&]() {
        for (size_t t = 0; t < targets.size(); ++t) {
            if (done[t]) continue;
            if (!weak_independence(res.reached, targets[t]).independent) {
                done[t] = true;
                --remaining;
            }
        }
        return remaining == 0;
    };

    // chambers are tracked by the matrix of the Weyl element (columns = images
    // of the simple roots)
    IMat id(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    std::set<IMat> visited;
    std::queue<IMat> frontier;
    visited.insert(id);
    frontier.push(id);
    auto apply = [&](const IMat& m, const Vec& v) {
        Vec r(n, 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) r[i] = add_ck(r[i], mul_ck(m[j][i], v[j]));
        return r;
    };
    while (!frontier.empty()) {
        IMat m = frontier.front();
        frontier.pop();
        ++res.chambers_explored;
        bool changed = false;
        for (const auto& r : fund.rays) changed = add_reached(apply(m, r)) || changed;
        if (changed && update_targets()) {
            res.verdict = Verdict::Certified;
            return res;
        }
        if (res.chambers_explored >= chamber_budget) break;
        for (int j = 0; j < n; ++j) {
            // wall root crossed when reflecting in facet j
            Vec wall = m[j];
            if (!is_real_root(sys, wall))
                throw KmcError("internal: chamber wall is not a real root");
            Vec wp = is_nonneg(wall) ? wall : negate(wall);
            if (is_strictly_orthogonal(sys, alpha, wp)) continue;  // wall in the subsystem
            IMat next(n, Vec(n));
            for (int i = 0; i < n; ++i) {
                // sigma_j sends simple root i to e_i - A[j][i] e_j, then m
                next[i] = m[i];
                if (sys.g.a[j][i] != 0)
                    for (int k = 0; k < n; ++k)
                        next[i][k] = add_ck(next[i][k], -mul_ck(sys.g.a[j][i], m[j][k]));
            }
            if (visited.insert(next).second) frontier.push(next);
        }
    }
    res.verdict = Verdict::Inconclusive;
    return res;
}

}  // namespace kmc

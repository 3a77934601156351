#include "kmc/basis.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace kmc {

namespace {

// Exact Phase-I simplex (Bland's rule) deciding b ∈ { A x : x >= 0 } over the
// rationals. Returns either a rational solution x or a separating functional y
// with y^T A >= 0, y^T b < 0.
struct ConeDecision {
    bool member = false;
    RVec x;  // if member
    RVec y;  // if not
};

ConeDecision decide_cone(const std::vector<Vec>& columns, const Vec& b) {
    int m = (int)b.size();
    int n = (int)columns.size();
    for (const auto& c : columns)
        if ((int)c.size() != m) throw DimensionMismatch("column length mismatch");
    // sign-normalize rows so the rhs is nonnegative
    std::vector<int> sgn(m, 1);
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) sgn[i] = -1;
    int width = n + m + 1;  // structural, artificial, rhs
    RMat t(m, RVec(width, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = Rat(sgn[i] * columns[j][i]);
        t[i][n + i] = 1;
        t[i][width - 1] = Rat(sgn[i] * b[i]);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
    // reduced-cost row for Phase I (costs: 0 on structural, 1 on artificial)
    RVec z(width, 0);
    for (int j = 0; j < width; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += t[i][j];
        z[j] = (j >= n && j < n + m ? Rat(1) : Rat(0)) - s;
    }
    while (true) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (z[j] < 0) { enter = j; break; }  // Bland: smallest index
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][width - 1] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw KmcError("phase-I objective unbounded (cannot happen)");
        Rat piv = t[leave][enter];
        for (int j = 0; j < width; ++j) t[leave][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat f = z[enter];
        if (f != 0)
            for (int j = 0; j < width; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    Rat obj = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) obj += t[i][width - 1];
    ConeDecision d;
    if (obj == 0) {
        d.member = true;
        d.x.assign(n, 0);
        for (int i = 0; i < m; ++i)
            if (basis[i] < n) d.x[basis[i]] = t[i][width - 1];
    } else {
        d.member = false;
        // dual multipliers: reduced cost of artificial i is 1 - pi_i
        d.y.assign(m, 0);
        for (int i = 0; i < m; ++i) {
            Rat pi = Rat(1) - z[n + i];
            d.y[i] = -Rat(sgn[i]) * pi;
        }
    }
    return d;
}

BigInt lcm_of_denominators(const RVec& v) {
    BigInt l = 1;
    for (const auto& q : v) l = boost::multiprecision::lcm(l, denominator(q));
    return l;
}

}  // namespace

WeakIndependence weak_independence(const std::vector<Vec>& columns, const Vec& target) {
    ConeDecision d = decide_cone(columns, target);
    WeakIndependence w;
    if (d.member) {
        w.independent = false;
        BigInt r = lcm_of_denominators(d.x);
        w.r = r.convert_to<long long>();
        w.x.resize(columns.size());
        for (size_t j = 0; j < columns.size(); ++j)
            w.x[j] = BigInt(numerator(d.x[j]) * (r / denominator(d.x[j]))).convert_to<long long>();
        // sanity: A x = target * r
        for (size_t i = 0; i < target.size(); ++i) {
            Coeff s = 0;
            for (size_t j = 0; j < columns.size(); ++j)
                s = add_ck(s, mul_ck(w.x[j], columns[j][i]));
            if (s != mul_ck(target[i], w.r)) throw KmcError("internal: bad dependency witness");
        }
    } else {
        w.independent = true;
        BigInt l = lcm_of_denominators(d.y);
        w.cert.y.resize(target.size());
        for (size_t i = 0; i < target.size(); ++i)
            w.cert.y[i] =
                BigInt(numerator(d.y[i]) * (l / denominator(d.y[i]))).convert_to<long long>();
        if (!verify_certificate(w.cert, columns, target))
            throw KmcError("internal: bad separating certificate");
    }
    return w;
}

bool verify_certificate(const FarkasCertificate& cert, const std::vector<Vec>& columns,
                        const Vec& target) {
    if (cert.y.size() != target.size()) throw DimensionMismatch("certificate length mismatch");
    for (const auto& c : columns) {
        if (c.size() != cert.y.size()) throw DimensionMismatch("column length mismatch");
        Coeff s = 0;
        for (size_t i = 0; i < c.size(); ++i) s = add_ck(s, mul_ck(cert.y[i], c[i]));
        if (s < 0) return false;
    }
    Coeff s = 0;
    for (size_t i = 0; i < target.size(); ++i) s = add_ck(s, mul_ck(cert.y[i], target[i]));
    return s < 0;
}

namespace {

BasisCandidate basis_search(const Subsystem& zs, size_t stop_at) {
    BasisCandidate bc;
    bc.cap = zs.cap;
    for (const auto& v : zs.members) {
        if (bc.roots.size() >= stop_at) break;
        WeakIndependence w = weak_independence(bc.roots, v);
        BasisEntry e;
        e.root = v;
        e.accepted = w.independent;
        if (w.independent) {
            e.cert = w.cert;
            bc.roots.push_back(v);
        } else {
            e.x = w.x;
            e.r = w.r;
        }
        bc.log.push_back(std::move(e));
    }
    return bc;
}

}  // namespace

BasisCandidate find_basis(const Subsystem& zs) {
    return basis_search(zs, zs.members.size() + 1);
}

BasisCandidate rank3_early_stop(const Subsystem& zs) {
    if (zs.ambient.g.rank != 3) throw KmcError("rank3_early_stop requires a rank-3 ambient system");
    return basis_search(zs, 2);
}

Vec evaluate_family(const PolynomialFamily& fam, long long n) {
    Vec v(fam.coords.size());
    for (size_t i = 0; i < fam.coords.size(); ++i) {
        Rat val = fam.coords[i][0] + fam.coords[i][1] * n + fam.coords[i][2] * n * n;
        if (denominator(val) != 1)
            throw FamilyViolation("non-integral family value at coordinate " + std::to_string(i),
                                  n);
        v[i] = BigInt(numerator(val)).convert_to<long long>();
    }
    return v;
}

FamilyReport verify_family(const PolynomialFamily& fam, const Subsystem& zs, long long n_lo,
                           long long n_hi) {
    FamilyReport rep;
    auto mirror = [&](Vec v) {
        if (fam.swap_symmetry) std::swap(v[fam.swap_symmetry->first], v[fam.swap_symmetry->second]);
        return v;
    };
    for (long long n = n_lo; n <= n_hi; ++n) {
        Vec v = evaluate_family(fam, n);  // throws on non-integrality
        if ((int)v.size() != zs.ambient.g.rank)
            throw DimensionMismatch("family dimension != ambient rank");
        if (is_zero(v) || !is_nonneg(v)) throw FamilyViolation("family value not a positive vector", n);
        if (!is_real_root(zs.ambient, v)) throw FamilyViolation("family value not a real root", n);
        if (!is_strictly_orthogonal(zs.ambient, zs.defining_root, v))
            throw FamilyViolation("family value not strictly orthogonal", n);
        if (height(v) <= zs.cap && !subsystem_contains(zs, v))
            throw FamilyViolation("family value missing from subsystem", n);
        // weak independence from all lower-height family members (and mirrors)
        std::vector<Vec> columns;
        for (long long m = n_lo; m <= n_hi; ++m) {
            if (m == n) continue;
            Vec u = evaluate_family(fam, m);
            if (height(u) < height(v)) {
                columns.push_back(u);
                Vec um = mirror(u);
                if (um != u) columns.push_back(um);
            }
        }
        if (!weak_independence(columns, v).independent)
            throw FamilyViolation("family value dependent on earlier members", n);
        rep.verified_n.push_back(n);
    }
    return rep;
}

std::optional<std::vector<PolynomialFamily>> fit_quadratic_family(const std::vector<Vec>& seq) {
    if (seq.size() < 4) throw InsufficientData("need at least 4 sequence members");
    size_t dim = seq[0].size();
    for (const auto& v : seq)
        if (v.size() != dim) throw DimensionMismatch("inconsistent sequence dimensions");
    for (int period = 1; period <= 2; ++period) {
        bool ok = true;
        std::vector<PolynomialFamily> fams;
        for (int cls = 0; cls < period && ok; ++cls) {
            std::vector<Vec> sub;
            for (size_t i = cls; i < seq.size(); i += period) sub.push_back(seq[i]);
            if (sub.size() < 4) { ok = false; break; }
            PolynomialFamily fam;
            fam.period = period;
            fam.n_min = 0;
            fam.n_max = (long long)sub.size() - 1;
            fam.coords.resize(dim);
            for (size_t c = 0; c < dim; ++c) {
                // exact quadratic through k = 0, 1, 2
                Rat y0 = Rat(sub[0][c]), y1 = Rat(sub[1][c]), y2 = Rat(sub[2][c]);
                Rat a2 = (y2 - 2 * y1 + y0) / 2;
                Rat a1 = y1 - y0 - a2;
                fam.coords[c] = {y0, a1, a2};
            }
            // validate on held-out members
            for (size_t k = 3; k < sub.size() && ok; ++k) {
                try {
                    if (evaluate_family(fam, (long long)k) != sub[k]) ok = false;
                } catch (const FamilyViolation&) {
                    ok = false;
                }
            }
            fams.push_back(std::move(fam));
        }
        if (ok) return fams;
    }
    return std::nullopt;
}

}  // namespace kmc

#include "kmc/centralizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace kmc {

bool is_strictly_orthogonal(const RootSystem& sys, const Vec& alpha, const Vec& beta) {
    if (!is_real_root(sys, alpha)) throw NotRealRoot("alpha must be real");
    if (!is_real_root(sys, beta)) throw NotRealRoot("beta must be real");
    if (coroot_pairing(sys, beta, alpha) != 0) return false;
    return !is_real_root(sys, add(alpha, beta));
}

namespace {

using I128 = __int128;

long long isqrt_i128(I128 x) {
    if (x < 0) return -1;
    long long r = (long long)sqrtl((long double)x);
    while (r > 0 && (I128)r * r > x) --r;
    while ((I128)(r + 1) * (r + 1) <= x) ++r;
    return r;
}

// Direct scan of { v >= 0 : (B alpha)·v = 0, |v|^2 = t, height <= cap } for
// each simple-root norm t, without enumerating the ambient root system. Two
// coordinates are solved (one linearly, one quadratically); the rest are
// searched with height pruning.
std::vector<Vec> zs_scan(const RootSystem& sys, const Vec& alpha, Coeff cap) {
    int n = sys.g.rank;
    const IMat& B = sys.sym.b;
    Vec c(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] = add_ck(c[i], mul_ck(B[i][j], alpha[j]));
    int jl = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(c[i]) > std::abs(c[jl])) jl = i;
    int jq = jl == 0 ? 1 : 0;  // prefer a decoupled quadratic variable
    for (int i = 0; i < n; ++i)
        if (i != jl && c[i] == 0) { jq = i; break; }
    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i)
        if (i != jl && i != jq) free_idx.push_back(i);
    std::set<Coeff> norms(  // possible real-root norms = simple-root norms
        [&] { std::set<Coeff> t; for (int i = 0; i < n; ++i) t.insert(B[i][i]); return t; }());

    std::vector<Vec> out;
    Vec v(n, 0);
    Vec s(n, 0);       // B·v over the free part
    Coeff q0 = 0, h = 0, l0 = 0;  // |v|^2, height, c·v over the free part

    long long d = c[jl];
    auto try_candidate = [&](Coeff x, Coeff t) {
        if (x < 0) return;
        Coeff num = -(l0 + c[jq] * x);
        if (d == 0 || num % d != 0) return;
        Coeff y = num / d;
        if (y < 0) return;
        if (h + x + y > cap) return;
        v[jq] = x;
        v[jl] = y;
        // exact re-verification of every condition
        if (norm2(sys.sym, v) == t && !is_zero(v) && is_real_root(sys, v) &&
            coroot_pairing(sys, v, alpha) == 0 && !is_real_root(sys, add(alpha, v)))
            out.push_back(v);
        v[jq] = 0;
        v[jl] = 0;
    };

    auto solve_pair = [&]() {
        // y = (-l0 - c_jq x)/d substituted into |v|^2 = t, scaled by d^2:
        // A x^2 + Bx x + C0 = d^2 t
        I128 dd = (I128)d * d;
        I128 A = dd * B[jq][jq] + (I128)c[jq] * c[jq] * B[jl][jl] -
                 2 * (I128)d * c[jq] * B[jq][jl];
        I128 Bx = 2 * dd * s[jq] - 2 * (I128)d * c[jq] * s[jl] -
                  2 * (I128)d * l0 * B[jq][jl] + 2 * (I128)l0 * c[jq] * B[jl][jl];
        I128 C0 = dd * q0 - 2 * (I128)d * l0 * s[jl] + (I128)l0 * l0 * B[jl][jl];
        for (Coeff t : norms) {
            I128 C = C0 - dd * t;
            if (A == 0) {
                if (Bx == 0) {
                    if (C == 0)  // every x solves; bounded by the cap
                        for (Coeff x = 0; h + x <= cap; ++x) try_candidate(x, t);
                } else if (C % Bx == 0) {
                    I128 x = -C / Bx;
                    if (x >= 0 && x <= cap) try_candidate((Coeff)x, t);
                }
            } else {
                I128 disc = Bx * Bx - 4 * A * C;
                if (disc < 0) continue;
                long long r = isqrt_i128(disc);
                if ((I128)r * r != disc) continue;
                for (int sgn : {-1, 1}) {
                    I128 num = -Bx + sgn * (I128)r;
                    if (num % (2 * A) != 0) continue;
                    I128 x = num / (2 * A);
                    if (x >= 0 && x <= cap) try_candidate((Coeff)x, t);
                    if (r == 0) break;
                }
            }
        }
    };

    std::function<void(size_t)> rec = [&](size_t fi) {
        if (fi == free_idx.size()) {
            solve_pair();
            return;
        }
        int i = free_idx[fi];
        Coeff val = 0;
        while (h <= cap) {
            rec(fi + 1);
            // increment coordinate i by one, updating the running data
            q0 += 2 * s[i] + B[i][i];
            for (int j = 0; j < n; ++j) s[j] += B[j][i];
            l0 += c[i];
            h += 1;
            v[i] = ++val;
        }
        // roll back
        while (val > 0) {
            v[i] = --val;
            h -= 1;
            l0 -= c[i];
            for (int j = 0; j < n; ++j) s[j] -= B[j][i];
            q0 -= 2 * s[i] + B[i][i];
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Subsystem compute_Zs(const RootSystem& sys, const Vec& alpha, Coeff height_cap) {
    if (height_cap < 1) throw KmcError("height cap must be >= 1");
    if (!is_real_root(sys, alpha)) throw NotRealRoot("alpha must be real");
    Subsystem zs;
    zs.ambient = sys;
    zs.defining_root = alpha;
    zs.cap = height_cap;
    if (sys.cls == SystemClass::Hyperbolic && height_cap > 60 && sys.g.rank > 3) {
        zs.members = zs_scan(sys, alpha, height_cap);
    } else {
        for (const auto& v : enumerate_positive_real_roots(sys, height_cap))
            if (coroot_pairing(sys, v, alpha) == 0 && !is_real_root(sys, add(alpha, v)))
                zs.members.push_back(v);
    }
    return zs;
}

bool subsystem_contains(const Subsystem& zs, const Vec& v) {
    return std::binary_search(zs.members.begin(), zs.members.end(), v, canonical_less);
}

ClosureReport check_closure_under_sum(const Subsystem& zs) {
    ClosureReport rep;
    for (size_t i = 0; i < zs.members.size(); ++i)
        for (size_t j = i; j < zs.members.size(); ++j) {
            ++rep.pairs_checked;
            Vec s = add(zs.members[i], zs.members[j]);
            if (height(s) > zs.cap) continue;
            if (!is_real_root(zs.ambient, s)) continue;
            if (!subsystem_contains(zs, s)) {
                rep.ok = false;
                rep.violations.push_back({zs.members[i], zs.members[j]});
            }
        }
    return rep;
}

ClosureReport check_weyl_closure(const Subsystem& zs) {
    ClosureReport rep;
    for (size_t i = 0; i < zs.members.size(); ++i)
        for (size_t j = 0; j < zs.members.size(); ++j) {
            ++rep.pairs_checked;
            Vec img = reflect(zs.ambient, zs.members[i], zs.members[j]);
            if (is_nonpos(img)) img = negate(img);  // symmetric part: ±β equivalent
            bool good;
            if (height(img) <= zs.cap)
                good = subsystem_contains(zs, img);
            else
                good = is_strictly_orthogonal(zs.ambient, zs.defining_root, img);
            if (!good) {
                rep.ok = false;
                rep.violations.push_back({zs.members[i], zs.members[j]});
            }
        }
    return rep;
}

}  // namespace kmc

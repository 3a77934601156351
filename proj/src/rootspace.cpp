#include "kmc/rootspace.hpp"

#include <algorithm>
#include <set>

namespace kmc {

RootSystem make_system(const Gcm& g) {
    RootSystem sys;
    sys.g = g;
    sys.sym = symmetrize(g);
    sys.cls = SystemClass::Finite;
    for (const auto& comp : components(g.a)) {
        SystemClass c = classify_class(submatrix(g, comp));
        sys.component_classes.push_back(c);
        if ((int)c > (int)sys.cls) sys.cls = c;
    }
    return sys;
}

Coeff bilinear(const Symmetrization& sym, const Vec& v, const Vec& w) {
    size_t n = sym.b.size();
    if (v.size() != n || w.size() != n) throw RankMismatch("bilinear: size mismatch");
    Coeff s = 0;
    for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        Coeff row = 0;
        for (size_t j = 0; j < n; ++j)
            if (w[j] != 0) row = add_ck(row, mul_ck(sym.b[i][j], w[j]));
        s = add_ck(s, mul_ck(v[i], row));
    }
    return s;
}

Coeff norm2(const Symmetrization& sym, const Vec& v) { return bilinear(sym, v, v); }

Coeff coroot_pairing(const RootSystem& sys, const Vec& v, const Vec& alpha) {
    Coeff a2 = norm2(sys.sym, alpha);
    if (a2 <= 0 || !is_real_root(sys, alpha))
        throw NotRealRoot("coroot pairing requires a real root");
    Coeff num = mul_ck(2, bilinear(sys.sym, v, alpha));
    if (num % a2 != 0)
        throw NotRealRoot("non-integral coroot pairing");  // cannot happen for lattice v
    return num / a2;
}

bool is_real_root(const RootSystem& sys, const Vec& v) {
    if (sys.cls == SystemClass::Indefinite) throw CriterionInapplicable();
    if ((int)v.size() != sys.g.rank) throw RankMismatch("is_real_root: size mismatch");
    Coeff n2 = norm2(sys.sym, v);
    if (n2 <= 0) return false;
    for (int i = 0; i < sys.g.rank; ++i)
        if (mul_ck(v[i], sys.sym.b[i][i]) % n2 != 0) return false;
    return true;
}

Vec reflect(const RootSystem& sys, const Vec& alpha, const Vec& v) {
    Coeff p = coroot_pairing(sys, v, alpha);
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = add_ck(v[i], mul_ck(-p, alpha[i]));
    return r;
}

RootString root_string(const RootSystem& sys, const Vec& alpha, const Vec& beta) {
    if (!is_real_root(sys, alpha)) throw NotRealRoot("alpha must be real");
    if (!is_real_root(sys, beta)) throw NotRealRoot("beta must be real");
    if (beta == alpha || beta == negate(alpha)) throw SameRay();
    Coeff pairing = coroot_pairing(sys, beta, alpha);
    Coeff bound = (pairing < 0 ? -pairing : pairing) + 64;
    RootString s;
    Vec v = beta;
    while (s.q < bound) {
        v = add(v, alpha);
        if (!is_real_root(sys, v)) break;
        ++s.q;
    }
    v = beta;
    while (s.p < bound) {
        v = sub(v, alpha);
        if (!is_real_root(sys, v)) break;
        ++s.p;
    }
    return s;
}

std::vector<Vec> enumerate_positive_real_roots(const RootSystem& sys, Coeff height_cap) {
    if (height_cap < 1) throw KmcError("height cap must be >= 1");
    int n = sys.g.rank;
    // closure under simple reflections: every non-simple positive real root is
    // strictly height-lowered by some simple reflection, so ascending closure
    // from the simple roots within the cap is complete
    std::set<Vec> seen;
    std::vector<Vec> frontier;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        seen.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (int i = 0; i < n; ++i) {
                Coeff pr = 0;
                for (int j = 0; j < n; ++j) pr = add_ck(pr, mul_ck(sys.g.a[i][j], v[j]));
                if (pr >= 0) continue;  // only height-raising reflections
                Vec w = v;
                w[i] = add_ck(w[i], -pr);
                if (height(w) > height_cap) continue;
                if (seen.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
    }
    std::vector<Vec> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace kmc

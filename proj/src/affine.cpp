#include "kmc/affine.hpp"

#include <algorithm>
#include <numeric>

namespace kmc {

namespace {

// primitive entry-wise positive kernel vector of the Cartan matrix
Vec kernel_vector(const IMat& a) {
    int n = (int)a.size();
    RMat m(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (m[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        Rat pv = m[row][col];
        for (int j = 0; j < n; ++j) m[row][j] /= pv;
        for (int i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int j = 0; j < n; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row != n - 1) throw NotAffine();
    int free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    RVec x(n, 0);
    x[free_col] = 1;
    for (int i = 0; i < row; ++i) x[pivot_col[i]] = -m[i][free_col];
    BigInt l = 1;
    for (const auto& q : x) l = boost::multiprecision::lcm(l, denominator(q));
    Vec d(n);
    BigInt g = 0;
    for (int i = 0; i < n; ++i) {
        BigInt v = numerator(x[i]) * (l / denominator(x[i]));
        d[i] = v.convert_to<Coeff>();
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
    }
    Coeff gg = g.convert_to<Coeff>();
    for (auto& e : d) e /= gg;
    bool neg = std::all_of(d.begin(), d.end(), [](Coeff e) { return e < 0; });
    if (neg)
        for (auto& e : d) e = -e;
    if (!std::all_of(d.begin(), d.end(), [](Coeff e) { return e > 0; })) throw NotAffine();
    return d;
}

struct NameParts {
    char letter;
    int sub;
    int twist;
};

NameParts parse_name(const std::string& name) {
    NameParts p{};
    p.letter = name[0];
    size_t us = name.find('_'), caret = name.find("^(");
    p.sub = std::stoi(name.substr(us + 1, caret - us - 1));
    p.twist = std::stoi(name.substr(caret + 2, name.size() - caret - 3));
    return p;
}

std::vector<signed char> base_reference_key(const NameParts& p, int base_rank) {
    char letter = p.letter;
    if (p.twist == 2) {
        if (letter == 'A') letter = 'C';
        else if (letter == 'D') letter = 'B';
        else if (letter == 'E') letter = 'F';
    } else if (p.twist == 3) {
        letter = 'G';
    }
    if (base_rank == 1) letter = 'A';
    if (base_rank == 2 && letter == 'B') letter = 'C';
    return canonical_key(finite_gcm(letter, base_rank).a);
}

}  // namespace

AffineRealization build_affine(const Gcm& g) {
    if (components(g.a).size() != 1) throw NotAffine();
    if (classify_class(g) != SystemClass::Affine) throw NotAffine();
    AffineRealization ar;
    ar.sys = make_system(g);
    auto nm = identify_connected(g);
    if (!nm) throw KmcError("internal: affine diagram not recognized");
    ar.name = *nm;
    NameParts p = parse_name(ar.name);
    ar.twist = p.twist;
    ar.half_tier = (p.twist == 2 && p.letter == 'A' && p.sub % 2 == 0);
    ar.delta = kernel_vector(g.a);

    int n = g.rank;
    auto want_key = base_reference_key(p, n - 1);
    Coeff want_mark = ar.half_tier ? 2 : 1;
    int k0 = -1;
    for (int k = 0; k < n && k0 < 0; ++k) {
        if (ar.delta[k] != want_mark) continue;
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (i != k) rest.push_back(i);
        Gcm sub = submatrix(g, rest);
        if (components(sub.a).size() != 1) continue;
        if (classify_class(sub) != SystemClass::Finite) continue;
        if (canonical_key(sub.a) == want_key) k0 = k;
    }
    if (k0 < 0) throw KmcError("internal: no finite base node found for " + ar.name);
    ar.deleted = k0;

    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (i != k0) rest.push_back(i);
    RootSystem bsys = make_system(submatrix(g, rest));
    Coeff lo = 0, hi = 0;
    for (const auto& r : enumerate_positive_real_roots(bsys, 64)) {
        Vec full(n, 0);
        for (size_t j = 0; j < rest.size(); ++j) full[rest[j]] = r[j];
        Coeff t = norm2(ar.sys.sym, full);
        if (lo == 0 || t < lo) lo = t;
        if (t > hi) hi = t;
        ar.base_roots.insert(full);
        ar.base_roots.insert(negate(full));
    }
    ar.base_short = lo;
    ar.base_long = hi;
    std::set<Coeff> tiers;
    for (const auto& r : ar.base_roots) tiers.insert(norm2(ar.sys.sym, r));
    if (ar.half_tier) {
        if (ar.base_long % 4 != 0) throw KmcError("internal: half tier not integral");
        tiers.insert(ar.base_long / 4);
    }
    ar.tiers.assign(tiers.begin(), tiers.end());
    return ar;
}

bool affine_real_root_predicate(const AffineRealization& ar, const Vec& v) {
    if ((int)v.size() != ar.sys.g.rank) throw RankMismatch("vector dimension mismatch");
    if (is_zero(v)) return false;
    int k0 = ar.deleted;
    auto in_base = [&](const Vec& b) { return ar.base_roots.count(b) != 0; };
    auto translate = [&](const Vec& u, Coeff n) {
        Vec b = u;
        for (size_t i = 0; i < b.size(); ++i) b[i] -= n * ar.delta[i];
        return b;
    };
    if (!ar.half_tier) {
        // delta mark at the base node is 1, so the translation index is v[k0]
        Coeff m = v[k0];
        Vec b = translate(v, m);
        if (!in_base(b)) return false;
        if (ar.twist == 1) return true;
        Coeff t = norm2(ar.sys.sym, b);
        if (t == ar.base_short) return true;
        return m % ar.twist == 0;
    }
    // three-tier family: delta mark at the base node is 2
    if (v[k0] % 2 != 0) {
        // half-long tier: 2v = alpha + (2n-1) delta with alpha long in the base
        Vec w = v;
        for (auto& e : w) e = mul_ck(e, 2);
        Vec b = translate(w, v[k0]);
        return in_base(b) && norm2(ar.sys.sym, b) == ar.base_long;
    }
    Coeff m = v[k0] / 2;
    Vec b = translate(v, m);
    if (!in_base(b)) return false;
    Coeff t = norm2(ar.sys.sym, b);
    if (t == ar.base_short && ar.base_short != ar.base_long) return true;
    return m % 2 == 0;
}

namespace {

Coeff tier_for_class(const AffineRealization& ar, RootClass cls) {
    if (cls == RootClass::Medium) {
        if (ar.tiers.size() != 3)
            throw InvalidClass("medium length requires a three-tier system");
        return ar.tiers[1];
    }
    if (cls == RootClass::Long) return ar.tiers.back();
    if (cls == RootClass::Short) return ar.tiers.front();
    throw InvalidClass("no single tier for class 'any'");
}

}  // namespace

Vec class_representative(const AffineRealization& ar, RootClass cls) {
    Coeff t = tier_for_class(ar, cls);
    for (const auto& r : enumerate_positive_real_roots(ar.sys, 4))
        if (norm2(ar.sys.sym, r) == t) return r;
    throw KmcError("internal: no low-height representative of the requested length");
}

std::string affine_centralizer_type(const AffineRealization& ar, RootClass cls) {
    if (cls == RootClass::Any) {
        std::string first;
        std::set<Coeff> tiers(ar.tiers.begin(), ar.tiers.end());
        bool got = false;
        for (Coeff t : tiers) {
            RootClass c = (t == ar.tiers.front()) ? RootClass::Short
                          : (t == ar.tiers.back()) ? RootClass::Long
                                                   : RootClass::Medium;
            std::string s = affine_centralizer_type(ar, c);
            if (!got) {
                first = s;
                got = true;
            } else if (s != first) {
                throw InvalidClass("length classes disagree; 'any' is not valid here");
            }
        }
        return first;
    }
    Vec alpha = class_representative(ar, cls);
    Coeff cap = 4 * height(ar.delta);
    Subsystem zs = compute_Zs(ar.sys, alpha, cap);
    BasisCandidate bc = find_basis(zs);
    if (bc.roots.empty()) return "0";
    int k = (int)bc.roots.size();
    IMat a(k, Vec(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            a[i][j] = coroot_pairing(ar.sys, bc.roots[j], bc.roots[i]);
            if (i != j && a[i][j] > 0)
                throw KmcError("basis found below the cap is not a fundamental system; "
                               "increase the cap");
        }
    Gcm sub = validate_gcm(a);
    for (const auto& comp : components(sub.a)) {
        SystemClass c = classify_class(submatrix(sub, comp));
        if (c != SystemClass::Finite && c != SystemClass::Affine)
            throw KmcError("basis diagram incomplete below the cap; increase the cap");
    }
    return identify_diagram(sub);
}

}  // namespace kmc

#include "kmc/cartan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kmc {

namespace {

using I128 = __int128;

// Leading principal minors of an integer matrix, fraction-free (Bareiss).
// Stops early and returns false if an intermediate pivot vanishes before the
// last step (the caller then knows some leading minor is zero).
std::vector<I128> leading_minors(const IMat& m) {
    int n = (int)m.size();
    std::vector<std::vector<I128>> w(n, std::vector<I128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = m[i][j];
    std::vector<I128> minors(n, 0);
    I128 prev = 1;
    for (int k = 0; k < n; ++k) {
        minors[k] = w[k][k];
        if (w[k][k] == 0) {
            // remaining leading minors are genuine determinants; compute them
            // by restarting Bareiss with row swaps (sign-tracked).
            for (int t = k; t < n; ++t) minors[t] = 0;
            for (int t = k + 1; t < n; ++t) {
                // full determinant of the leading t+1 block
                IMat sub(t + 1, Vec(t + 1));
                for (int i = 0; i <= t; ++i)
                    for (int j = 0; j <= t; ++j) sub[i][j] = m[i][j];
                // generic determinant with pivoting
                std::vector<std::vector<Rat>> g(t + 1, std::vector<Rat>(t + 1));
                for (int i = 0; i <= t; ++i)
                    for (int j = 0; j <= t; ++j) g[i][j] = Rat(sub[i][j]);
                Rat det = 1;
                bool zero = false;
                for (int c = 0; c <= t && !zero; ++c) {
                    int piv = -1;
                    for (int r = c; r <= t; ++r)
                        if (g[r][c] != 0) { piv = r; break; }
                    if (piv < 0) { zero = true; break; }
                    if (piv != c) { std::swap(g[piv], g[c]); det = -det; }
                    det *= g[c][c];
                    for (int r = c + 1; r <= t; ++r) {
                        Rat f = g[r][c] / g[c][c];
                        for (int cc = c; cc <= t; ++cc) g[r][cc] -= f * g[c][cc];
                    }
                }
                if (zero)
                    minors[t] = 0;
                else {
                    BigInt num = numerator(static_cast<Rat>(det));
                    BigInt den = denominator(static_cast<Rat>(det));
                    BigInt q = num / den;
                    minors[t] = (I128)q.convert_to<long long>();
                }
            }
            return minors;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
        prev = w[k][k];
    }
    return minors;
}

I128 int_det(const IMat& m) {
    if (m.empty()) return 1;
    return leading_minors(m).back();
}

IMat principal_submatrix(const IMat& a, const std::vector<int>& idx) {
    IMat s(idx.size(), Vec(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) s[i][j] = a[idx[i]][idx[j]];
    return s;
}

}  // namespace

Gcm validate_gcm(const IMat& m) {
    int n = (int)m.size();
    if (n == 0) throw KmcError("empty matrix");
    for (int i = 0; i < n; ++i)
        if ((int)m[i].size() != n) throw KmcError("matrix is not square");
    for (int i = 0; i < n; ++i) {
        if (m[i][i] != 2) throw GcmValidationError("DiagonalNotTwo", i, i);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (m[i][j] > 0) throw GcmValidationError("PositiveOffDiagonal", i, j);
            if ((m[i][j] == 0) != (m[j][i] == 0))
                throw GcmValidationError("ZeroAsymmetry", i, j);
        }
    }
    return Gcm{n, m};
}

std::vector<std::vector<int>> components(const IMat& a) {
    int n = (int)a.size();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u)
                if (u != v && a[v][u] != 0 && comp[u] < 0) {
                    comp[u] = nc;
                    stack.push_back(u);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
    return out;
}

Gcm submatrix(const Gcm& g, const std::vector<int>& idx) {
    return Gcm{(int)idx.size(), principal_submatrix(g.a, idx)};
}

Symmetrization symmetrize(const Gcm& g) {
    int n = g.rank;
    std::vector<Rat> d(n, 0);
    for (const auto& comp : components(g.a)) {
        d[comp[0]] = 1;
        std::vector<int> stack{comp[0]};
        std::vector<int> order;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int u : comp)
                if (u != v && g.a[v][u] != 0 && d[u] == 0) {
                    d[u] = d[v] * g.a[v][u] / g.a[u][v];
                    stack.push_back(u);
                }
        }
        // consistency on every edge of the component
        for (int v : comp)
            for (int u : comp)
                if (u != v && g.a[v][u] != 0)
                    if (d[v] * g.a[v][u] != d[u] * g.a[u][v]) throw NotSymmetrizable();
        // scale the component to coprime positive integers
        BigInt lcm_den = 1;
        for (int v : comp) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(d[v]));
        BigInt gcd_num = 0;
        for (int v : comp) gcd_num = boost::multiprecision::gcd(gcd_num, numerator(d[v]) * (lcm_den / denominator(d[v])));
        for (int v : comp) d[v] = d[v] * Rat(lcm_den, gcd_num);
    }
    Symmetrization s;
    s.d.resize(n);
    for (int i = 0; i < n; ++i) s.d[i] = (Coeff)numerator(d[i]).convert_to<long long>();
    s.b.assign(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.b[i][j] = mul_ck(s.d[i], g.a[i][j]);
    return s;
}

bool is_symmetrizable(const Gcm& g) {
    try {
        symmetrize(g);
        return true;
    } catch (const NotSymmetrizable&) {
        return false;
    }
}

DynkinDiagram diagram_of(const Gcm& g) {
    DynkinDiagram d;
    d.rank = g.rank;
    for (int i = 0; i < g.rank; ++i)
        for (int j = i + 1; j < g.rank; ++j)
            if (g.a[i][j] != 0)
                d.edges.push_back({i, j, (int)-g.a[i][j], (int)-g.a[j][i]});
    return d;
}

std::string to_dot(const Gcm& g) {
    DynkinDiagram d = diagram_of(g);
    std::ostringstream os;
    os << "graph dynkin {\n";
    auto comps = components(g.a);
    for (size_t c = 0; c < comps.size(); ++c) {
        if (comps.size() > 1) os << "  subgraph cluster_" << c << " {\n";
        for (int v : comps[c])
            os << "  n" << v + 1 << " [label=\"" << v + 1 << "\"];\n";
        if (comps.size() > 1) os << "  }\n";
    }
    for (const auto& e : d.edges) {
        os << "  n" << e.i + 1 << " -- n" << e.j + 1;
        if (e.lij != 1 || e.lji != 1)
            os << " [label=\"(" << e.lij << "," << e.lji << ")\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

// Fast finite/affine recognition for a connected GCM: 0 finite, 1 affine,
// 2 neither. Valid because finite and affine GCMs are always symmetrizable,
// and for symmetric B positive-definiteness is a leading-minor condition.
int fa_class_connected(const Gcm& g) {
    Symmetrization s;
    try {
        s = symmetrize(g);
    } catch (const NotSymmetrizable&) {
        return 2;
    }
    auto minors = leading_minors(s.b);
    int n = g.rank;
    bool lead_pos = true;
    for (int i = 0; i + 1 < n; ++i)
        if (minors[i] <= 0) { lead_pos = false; break; }
    if (lead_pos && minors[n - 1] > 0) return 0;
    if (lead_pos && minors[n - 1] == 0) return 1;
    return 2;
}

bool all_components_finite_or_affine(const Gcm& g) {
    for (const auto& comp : components(g.a))
        if (fa_class_connected(submatrix(g, comp)) == 2) return false;
    return true;
}

// Allocation-light variant of fa_class_connected for a connected vertex subset
// of a larger matrix; falls back to the exact path when entries get large
// enough that the fraction-free elimination could overflow.
int fa_class_subset(const IMat& a, const std::vector<int>& verts) {
    int n = (int)verts.size();
    if (n == 1) return 0;
    // symmetrize with long long fractions d_i = p_i/q_i
    long long p[10], q[10];
    int seen[10];
    for (int i = 0; i < n; ++i) seen[i] = 0;
    p[0] = q[0] = 1;
    seen[0] = 1;
    int stack[10], sp = 0;
    stack[sp++] = 0;
    while (sp) {
        int i = stack[--sp];
        for (int j = 0; j < n; ++j) {
            if (seen[j] || a[verts[i]][verts[j]] == 0) continue;
            long long np = p[i] * (-a[verts[i]][verts[j]]);
            long long nq = q[i] * (-a[verts[j]][verts[i]]);
            long long g = std::gcd(np, nq);
            p[j] = np / g;
            q[j] = nq / g;
            seen[j] = 1;
            stack[sp++] = j;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Coeff aij = a[verts[i]][verts[j]], aji = a[verts[j]][verts[i]];
            if (aij == 0) continue;
            if (p[i] * aij * q[j] != p[j] * aji * q[i]) return 2;
        }
    long long L = 1;
    for (int i = 0; i < n; ++i) L = std::lcm(L, q[i]);
    long long d[10], g = 0;
    for (int i = 0; i < n; ++i) {
        d[i] = p[i] * (L / q[i]);
        g = std::gcd(g, d[i]);
    }
    I128 b[10][10];
    long long maxabs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long e = d[i] / g * a[verts[i]][verts[j]];
            maxabs = std::max(maxabs, std::abs(e));
            b[i][j] = e;
        }
    if (maxabs > 1000) {
        IMat sub(n, Vec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sub[i][j] = a[verts[i]][verts[j]];
        return fa_class_connected(Gcm{n, sub});
    }
    // fraction-free leading minors; a nonpositive proper leading minor means
    // neither finite nor affine, so we can stop right there
    I128 prev = 1;
    for (int k = 0; k < n; ++k) {
        I128 piv = b[k][k];
        if (k < n - 1) {
            if (piv <= 0) return 2;
        } else {
            if (piv > 0) return 0;
            if (piv == 0) return 1;
            return 2;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                b[i][j] = (b[i][j] * piv - b[i][k] * b[k][j]) / prev;
        prev = piv;
    }
    return 2;  // unreachable
}

// components of the induced subdiagram on `verts`, each tested finite/affine
bool subsets_all_finite_or_affine(const IMat& a, const std::vector<int>& verts) {
    int n = (int)verts.size();
    std::vector<int> comp(n, -1);
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> cverts{s};
        comp[s] = s;
        for (size_t t = 0; t < cverts.size(); ++t)
            for (int u = 0; u < n; ++u)
                if (comp[u] < 0 && a[verts[cverts[t]]][verts[u]] != 0) {
                    comp[u] = s;
                    cverts.push_back(u);
                }
        std::vector<int> abs;
        for (int v : cverts) abs.push_back(verts[v]);
        if (fa_class_subset(a, abs) == 2) return false;
    }
    return true;
}

}  // namespace

SystemClass classify_class(const Gcm& g) {
    if (components(g.a).size() != 1) throw Disconnected();
    int n = g.rank;
    // all principal minors, per the trichotomy
    bool all_pos = true, proper_pos = true;
    I128 full_det = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        I128 det = int_det(principal_submatrix(g.a, idx));
        if ((int)idx.size() == n) {
            full_det = det;
            if (det <= 0) all_pos = false;
        } else {
            if (det <= 0) { all_pos = false; proper_pos = false; }
        }
        if (!proper_pos) break;
    }
    if (all_pos) return SystemClass::Finite;
    if (proper_pos && full_det == 0) return SystemClass::Affine;
    // hyperbolic: every one-vertex deletion leaves only finite/affine pieces
    for (int v = 0; v < n; ++v) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (i != v) idx.push_back(i);
        if (!idx.empty() && !all_components_finite_or_affine(submatrix(g, idx)))
            return SystemClass::Indefinite;
    }
    return SystemClass::Hyperbolic;
}

SystemType classify(const Gcm& g) {
    SystemClass c = classify_class(g);
    std::string name;
    if (c == SystemClass::Finite || c == SystemClass::Affine) {
        auto id = identify_connected(g);
        if (id) name = *id;
    }
    return SystemType{c, name};
}

// ---------------------------------------------------------------------------
// Reference Cartan matrices
// ---------------------------------------------------------------------------

namespace {

Gcm gcm_from_bilinear(const IMat& b) {
    int n = (int)b.size();
    IMat a(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Coeff num = 2 * b[i][j];
            if (num % b[i][i] != 0) throw KmcError("bilinear form does not define a GCM");
            a[i][j] = num / b[i][i];
        }
    return validate_gcm(a);
}

// Symmetric bilinear forms of the finite types, long roots normalized to 2
// except C/F/G where the standard 2/4 resp. 2/6 normalization is used.
IMat finite_bilinear(char family, int l) {
    auto path = [&](Vec norms) {
        int n = (int)norms.size();
        IMat b(n, Vec(n, 0));
        for (int i = 0; i < n; ++i) b[i][i] = norms[i];
        for (int i = 0; i + 1 < n; ++i) {
            // adjacent simple roots: (a_i, a_{i+1}) = -min(|a_i|^2,|a_{i+1}|^2)/2 * k
            b[i][i + 1] = b[i + 1][i] = -std::min(norms[i], norms[i + 1]) / 2 *
                                        (std::max(norms[i], norms[i + 1]) / std::min(norms[i], norms[i + 1]) >= 1 ? 1 : 1);
        }
        return b;
    };
    switch (family) {
        case 'A': {
            IMat b(l, Vec(l, 0));
            for (int i = 0; i < l; ++i) b[i][i] = 2;
            for (int i = 0; i + 1 < l; ++i) b[i][i + 1] = b[i + 1][i] = -1;
            return b;
        }
        case 'B': {
            if (l < 2) throw KmcError("B_l needs l >= 2");
            IMat b(l, Vec(l, 0));
            for (int i = 0; i < l; ++i) b[i][i] = 2;
            b[l - 1][l - 1] = 1;
            for (int i = 0; i + 1 < l; ++i) b[i][i + 1] = b[i + 1][i] = -1;
            return b;
        }
        case 'C': {
            if (l < 2) throw KmcError("C_l needs l >= 2");
            IMat b(l, Vec(l, 0));
            for (int i = 0; i < l; ++i) b[i][i] = 2;
            b[l - 1][l - 1] = 4;
            for (int i = 0; i + 1 < l; ++i) b[i][i + 1] = b[i + 1][i] = -1;
            b[l - 2][l - 1] = b[l - 1][l - 2] = -2;
            return b;
        }
        case 'D': {
            if (l < 3) throw KmcError("D_l needs l >= 3");
            IMat b(l, Vec(l, 0));
            for (int i = 0; i < l; ++i) b[i][i] = 2;
            for (int i = 0; i + 1 < l - 1; ++i) b[i][i + 1] = b[i + 1][i] = -1;
            b[l - 3][l - 1] = b[l - 1][l - 3] = -1;
            return b;
        }
        case 'E': {
            if (l < 6 || l > 8) throw KmcError("E_l needs 6 <= l <= 8");
            // nodes 0..l-1: path 0-2-3-4-...-(l-1), node 1 attached to node 3
            IMat b(l, Vec(l, 0));
            for (int i = 0; i < l; ++i) b[i][i] = 2;
            auto link = [&](int i, int j) { b[i][j] = b[j][i] = -1; };
            link(0, 2);
            for (int i = 2; i + 1 < l; ++i) link(i, i + 1);
            link(1, 3);
            return b;
        }
        case 'F': {
            if (l != 4) throw KmcError("F family has rank 4 only");
            return IMat{{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
        }
        case 'G': {
            if (l != 2) throw KmcError("G family has rank 2 only");
            return IMat{{2, -3}, {-3, 6}};
        }
    }
    (void)path;
    throw KmcError("unknown finite family");
}

// Positive roots of the finite system given by bilinear form b, via reflection
// closure from the simple roots.
std::vector<Vec> finite_positive_roots(const IMat& b) {
    int n = (int)b.size();
    std::set<Vec> roots;
    std::vector<Vec> frontier;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        roots.insert(e);
        frontier.push_back(e);
    }
    auto pair_with_coroot = [&](const Vec& v, int i) {
        Coeff num = 0;
        for (int j = 0; j < n; ++j) num += v[j] * b[i][j];
        return 2 * num / b[i][i];
    };
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (int i = 0; i < n; ++i) {
                Coeff p = pair_with_coroot(v, i);
                Vec w = v;
                w[i] -= p;
                if (is_nonneg(w) && !is_zero(w) && !roots.count(w)) {
                    roots.insert(w);
                    next.push_back(w);
                }
            }
        frontier = std::move(next);
    }
    return {roots.begin(), roots.end()};
}

Coeff norm2(const IMat& b, const Vec& v) {
    Coeff s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) s += v[i] * b[i][j] * v[j];
    return s;
}

Vec highest_root_of_norm(const IMat& b, Coeff target_norm) {
    Vec best;
    Coeff best_h = -1;
    for (const auto& r : finite_positive_roots(b)) {
        if (norm2(b, r) != target_norm) continue;
        Coeff h = height(r);
        if (h > best_h) { best_h = h; best = r; }
    }
    if (best.empty()) throw KmcError("no root of requested norm");
    return best;
}

// Extend a finite bilinear form by an affine node a_0 = delta - theta (or the
// A_{2l}^(2) variant a_0 = (delta - theta)/2), giving the affine bilinear form.
IMat affinize(const IMat& fb, const Vec& theta, int denom) {
    int l = (int)fb.size();
    IMat b(l + 1, Vec(l + 1, 0));
    Coeff t2 = norm2(fb, theta);
    if (t2 % (denom * denom) != 0 && denom != 1) {
        if (t2 % (denom * denom) != 0) throw KmcError("bad affinization");
    }
    b[0][0] = t2 / (denom * denom);
    for (int j = 0; j < l; ++j) {
        Coeff dot = 0;
        for (int k = 0; k < l; ++k) dot += theta[k] * fb[k][j];
        if (dot % denom != 0) throw KmcError("bad affinization");
        b[0][j + 1] = b[j + 1][0] = -dot / denom;
    }
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) b[i + 1][j + 1] = fb[i][j];
    return b;
}

}  // namespace

Gcm finite_gcm(char family, int l) { return gcm_from_bilinear(finite_bilinear(family, l)); }

Gcm affine_gcm_untwisted(char family, int l) {
    if (family == 'A' && l == 1) return validate_gcm(IMat{{2, -2}, {-2, 2}});
    IMat fb = finite_bilinear(family, l);
    Coeff long_norm = 0;
    for (int i = 0; i < l; ++i) long_norm = std::max(long_norm, fb[i][i]);
    Vec theta = highest_root_of_norm(fb, long_norm);
    return gcm_from_bilinear(affinize(fb, theta, 1));
}

Gcm affine_gcm_twisted(const std::string& kind, int l) {
    if (kind == "a2even") {  // A_{2l}^(2), rank l+1, l >= 1
        IMat fb = finite_bilinear(l == 1 ? 'A' : 'C', l);
        if (l == 1) fb = IMat{{4}};  // C_1: a single long root
        Vec theta = highest_root_of_norm(fb, 4);
        return gcm_from_bilinear(affinize(fb, theta, 2));
    }
    if (kind == "a2odd") {  // A_{2l-1}^(2), rank l+1, l >= 2
        IMat fb = finite_bilinear('C', l);
        Vec theta = highest_root_of_norm(fb, 2);
        return gcm_from_bilinear(affinize(fb, theta, 1));
    }
    if (kind == "d2") {  // D_{l+1}^(2), rank l+1, l >= 2
        IMat fb = finite_bilinear('B', l);
        Vec theta = highest_root_of_norm(fb, 1);
        return gcm_from_bilinear(affinize(fb, theta, 1));
    }
    if (kind == "e62") {  // E_6^(2), rank 5
        IMat fb = finite_bilinear('F', 4);
        Vec theta = highest_root_of_norm(fb, 2);
        return gcm_from_bilinear(affinize(fb, theta, 1));
    }
    if (kind == "d43") {  // D_4^(3), rank 3
        IMat fb = finite_bilinear('G', 2);
        Vec theta = highest_root_of_norm(fb, 2);
        return gcm_from_bilinear(affinize(fb, theta, 1));
    }
    throw KmcError("unknown twisted affine kind: " + kind);
}

// ---------------------------------------------------------------------------
// Canonical forms, identification, automorphisms
// ---------------------------------------------------------------------------

namespace {

using Key = std::vector<signed char>;

// Extension record for placing vertex v after the ordered prefix `perm`.
Key extension(const IMat& a, const std::vector<int>& perm, int v) {
    Key e;
    e.reserve(perm.size() * 2);
    for (int u : perm) {
        e.push_back((signed char)a[v][u]);
        e.push_back((signed char)a[u][v]);
    }
    return e;
}

void canonical_rec(const IMat& a, std::vector<int>& perm, std::vector<bool>& used, Key& cur,
                   Key& best, bool& have_best) {
    int n = (int)a.size();
    if ((int)perm.size() == n) {
        if (!have_best || cur < best) {
            best = cur;
            have_best = true;
        }
        return;
    }
    // greedy lexicographic: only extensions achieving the minimum can lead to
    // the minimal full key
    Key min_ext;
    bool have = false;
    for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        Key e = extension(a, perm, v);
        if (!have || e < min_ext) { min_ext = e; have = true; }
    }
    // among tied candidates, vertices whose transposition is a diagram
    // automorphism lead to identical completions; keep one representative
    auto twin = [&](int u, int v) {
        if (a[u][v] != a[v][u]) return false;
        for (int w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            if (a[u][w] != a[v][w] || a[w][u] != a[w][v]) return false;
        }
        return true;
    };
    std::vector<int> reps;
    for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        if (extension(a, perm, v) != min_ext) continue;
        bool dup = false;
        for (int u : reps)
            if (twin(u, v)) { dup = true; break; }
        if (!dup) reps.push_back(v);
    }
    for (int v : reps) {
        size_t old = cur.size();
        cur.insert(cur.end(), min_ext.begin(), min_ext.end());
        used[v] = true;
        perm.push_back(v);
        canonical_rec(a, perm, used, cur, best, have_best);
        perm.pop_back();
        used[v] = false;
        cur.resize(old);
    }
}

IMat matrix_from_key(const Key& key, int n) {
    IMat a(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    size_t p = 0;
    for (int k = 1; k < n; ++k)
        for (int u = 0; u < k; ++u) {
            a[k][u] = key[p++];
            a[u][k] = key[p++];
        }
    return a;
}

}  // namespace

std::vector<signed char> canonical_key(const IMat& a) {
    std::vector<int> perm;
    std::vector<bool> used(a.size(), false);
    Key cur, best;
    bool have_best = false;
    canonical_rec(a, perm, used, cur, best, have_best);
    return best;
}

std::vector<std::vector<int>> diagram_automorphisms(const IMat& a) {
    int n = (int)a.size();
    std::vector<std::vector<int>> autos;
    std::vector<int> p(n, -1);
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            autos.push_back(p);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (a[p[j]][v] != a[j][i] || a[v][p[j]] != a[i][j]) ok = false;
            if (!ok) continue;
            p[i] = v;
            used[v] = true;
            rec(i + 1);
            used[v] = false;
        }
    };
    rec(0);
    return autos;
}

namespace {

struct NamedGcm {
    std::string name;
    Gcm g;
};

// Candidate connected finite/affine diagrams of a given rank, in naming
// preference order (aliases like B_2 = C_2 or D_3^(2) = A_3^(2) resolve to
// whichever name comes first).
std::vector<NamedGcm> reference_diagrams(int n) {
    std::vector<NamedGcm> out;
    auto add = [&](const std::string& name, Gcm g) { out.push_back({name, std::move(g)}); };
    auto sub = [](int k) { return "_" + std::to_string(k); };
    // finite
    add("A" + sub(n), finite_gcm('A', n));
    if (n == 2) add("C_2", finite_gcm('C', 2));
    if (n == 2) add("G_2", finite_gcm('G', 2));
    if (n >= 3) add("B" + sub(n), finite_gcm('B', n));
    if (n >= 3) add("C" + sub(n), finite_gcm('C', n));
    if (n >= 4) add("D" + sub(n), finite_gcm('D', n));
    if (n >= 6 && n <= 8) add("E" + sub(n), finite_gcm('E', n));
    if (n == 4) add("F_4", finite_gcm('F', 4));
    // affine, rank n = l+1
    int l = n - 1;
    if (l == 1) add("A_1^(1)", affine_gcm_untwisted('A', 1));
    if (l >= 2) add("A" + sub(l) + "^(1)", affine_gcm_untwisted('A', l));
    if (l >= 3) add("B" + sub(l) + "^(1)", affine_gcm_untwisted('B', l));
    if (l >= 2) add("C" + sub(l) + "^(1)", affine_gcm_untwisted('C', l));
    if (l >= 4) add("D" + sub(l) + "^(1)", affine_gcm_untwisted('D', l));
    if (l >= 6 && l <= 8) add("E" + sub(l) + "^(1)", affine_gcm_untwisted('E', l));
    if (l == 4) add("F_4^(1)", affine_gcm_untwisted('F', 4));
    if (l == 2) add("G_2^(1)", affine_gcm_untwisted('G', 2));
    if (l >= 1) add("A" + sub(2 * l) + "^(2)", affine_gcm_twisted("a2even", l));
    if (l >= 2) add("A" + sub(2 * l - 1) + "^(2)", affine_gcm_twisted("a2odd", l));
    if (l >= 2) add("D" + sub(l + 1) + "^(2)", affine_gcm_twisted("d2", l));
    if (l == 4) add("E_6^(2)", affine_gcm_twisted("e62", 4));
    if (l == 2) add("D_4^(3)", affine_gcm_twisted("d43", 2));
    return out;
}

const std::map<Key, std::string>& reference_key_table(int n) {
    static std::map<int, std::map<Key, std::string>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::map<Key, std::string> t;
        for (const auto& ng : reference_diagrams(n)) {
            Key k = canonical_key(ng.g.a);
            if (!t.count(k)) t.emplace(std::move(k), ng.name);
        }
        it = cache.emplace(n, std::move(t)).first;
    }
    return it->second;
}

}  // namespace

std::optional<std::string> identify_connected(const Gcm& g) {
    const auto& table = reference_key_table(g.rank);
    auto it = table.find(canonical_key(g.a));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::string identify_diagram(const Gcm& g) {
    if (g.rank == 0) return "0";
    std::vector<std::string> names;
    for (const auto& comp : components(g.a)) {
        auto id = identify_connected(submatrix(g, comp));
        if (!id)
            throw UnrecognizedComponent("component is not of finite or affine type");
        names.push_back(*id);
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (size_t i = 0; i < names.size();) {
        size_t j = i;
        while (j < names.size() && names[j] == names[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i);
        out += names[i];
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hyperbolic catalog
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::pair<int, int>>& edge_labels() {
    // (A_vu, A_uv) with product <= 4: every rank-2 subdiagram of a hyperbolic
    // diagram must be of finite or affine type
    static std::vector<std::pair<int, int>> labels = {
        {-1, -1}, {-1, -2}, {-2, -1}, {-1, -3}, {-3, -1}, {-1, -4}, {-4, -1}, {-2, -2}};
    return labels;
}

bool is_hyperbolic_candidate(const Gcm& g, bool symmetrizable_only) {
    if (components(g.a).size() != 1) return false;
    int n = g.rank;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    if (fa_class_subset(g.a, all) != 2) return false;  // finite or affine
    for (int v = 0; v < n; ++v) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (i != v) idx.push_back(i);
        if (!subsets_all_finite_or_affine(g.a, idx)) return false;
    }
    if (symmetrizable_only && !is_symmetrizable(g)) return false;
    return true;
}

// DFS over the possible edges from a freshly added vertex `k` to vertices
// 0..k-1. While a suffix of old vertices is still unprocessed, the diagram on
// {0..i-1, k} is a proper subdiagram, so the component containing k must stay
// finite or affine.
void extend_vertex(IMat& a, int i, bool final_level, bool symmetrizable_only,
                   const std::function<void(const IMat&)>& sink) {
    int k = (int)a.size() - 1;
    if (i == k) {
        if (final_level) {
            Gcm g{k + 1, a};
            if (is_hyperbolic_candidate(g, symmetrizable_only)) sink(a);
        } else {
            std::vector<int> all(k + 1);
            for (int t = 0; t <= k; ++t) all[t] = t;
            if (subsets_all_finite_or_affine(a, all)) sink(a);
        }
        return;
    }
    auto check_partial = [&]() {
        // component of k within {0..i, k}
        std::vector<int> comp{k};
        std::vector<bool> in(k + 1, false);
        in[k] = true;
        for (size_t t = 0; t < comp.size(); ++t)
            for (int u = 0; u <= i; ++u)
                if (!in[u] && a[comp[t]][u] != 0) {
                    in[u] = true;
                    comp.push_back(u);
                }
        return fa_class_subset(a, comp) != 2;
    };
    // no edge
    a[k][i] = a[i][k] = 0;
    extend_vertex(a, i + 1, final_level, symmetrizable_only, sink);
    // at the final level the diagram on {0..i, k} stops being a proper
    // subdiagram once i reaches the last old vertex; skip the check there
    bool proper = !final_level || i + 1 < k;
    for (auto [lv, lu] : edge_labels()) {
        a[k][i] = lv;
        a[i][k] = lu;
        if (!proper || check_partial()) extend_vertex(a, i + 1, final_level, symmetrizable_only, sink);
    }
    a[k][i] = a[i][k] = 0;
}

}  // namespace

std::vector<Gcm> enumerate_hyperbolic_catalog(int rmin, int rmax, bool symmetrizable_only) {
    if (rmin < 3 || rmax > 10 || rmin > rmax)
        throw RankOutOfRange("hyperbolic catalog ranks must satisfy 3 <= rmin <= rmax <= 10");
    // BFS over iso classes of disjoint unions of finite/affine diagrams on k
    // vertices; a hyperbolic diagram of rank n is any such union on n-1
    // vertices plus one connecting vertex.
    std::set<Key> level;
    {
        IMat one{{2}};
        level.insert(canonical_key(one));
    }
    std::set<Key> found;
    for (int k = 1; k <= rmax - 1; ++k) {
        std::set<Key> next;
        for (const Key& key : level) {
            IMat base = matrix_from_key(key, k);
            IMat a(k + 1, Vec(k + 1, 0));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) a[i][j] = base[i][j];
            a[k][k] = 2;
            if (k + 1 >= rmin) {
                extend_vertex(a, 0, true, symmetrizable_only,
                              [&](const IMat& m) { found.insert(canonical_key(m)); });
            }
            if (k + 1 <= rmax - 1) {
                extend_vertex(a, 0, false, symmetrizable_only,
                              [&](const IMat& m) { next.insert(canonical_key(m)); });
            }
        }
        level = std::move(next);
    }
    std::vector<std::pair<std::pair<int, Key>, Gcm>> sorted;
    for (const Key& key : found) {
        int n = 1;
        while (n * (n - 1) != (int)key.size()) ++n;
        sorted.push_back({{n, key}, Gcm{n, matrix_from_key(key, n)}});
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Gcm> out;
    for (auto& [k, g] : sorted) out.push_back(std::move(g));
    return out;
}

}  // namespace kmc

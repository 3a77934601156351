#include "kmc/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace kmc {

namespace {

Coeff matrix_content(const IMat& b) {
    Coeff g = 0;
    for (const auto& row : b)
        for (Coeff e : row) g = std::gcd(g, e);
    return g == 0 ? 1 : g;
}

Coeff vector_content(const Vec& v) {
    Coeff g = 0;
    for (Coeff e : v) g = std::gcd(g, e);
    return g == 0 ? 1 : g;
}

IMat reduced_bilinear(const Symmetrization& sym, Coeff g) {
    IMat br = sym.b;
    for (auto& row : br)
        for (auto& e : row) e /= g;
    return br;
}

Coeff quad(const IMat& b, const Vec& v) {
    Coeff s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) s = add_ck(s, mul_ck(b[i][j], mul_ck(v[i], v[j])));
    return s;
}

Coeff pair_q(const IMat& b, const Vec& u, const Vec& w) {
    Coeff s = 0;
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) s = add_ck(s, mul_ck(b[i][j], mul_ck(u[i], w[j])));
    return s;
}

std::optional<Coeff> perfect_sqrt(Coeff x) {
    if (x < 0) return std::nullopt;
    Coeff r = (Coeff)std::llround(std::sqrt((double)x));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    if (r * r != x) return std::nullopt;
    return r;
}

}  // namespace

EliminationResult eliminate(const Symmetrization& sym, const Vec& alpha, Coeff target_norm) {
    int n = (int)sym.b.size();
    if (n != 3) throw RankMismatch("variable elimination requires a rank-3 system");
    if ((int)alpha.size() != n) throw RankMismatch("defining-root dimension mismatch");
    Coeff gB = matrix_content(sym.b);
    IMat br = reduced_bilinear(sym, gB);

    EliminationResult r;
    r.relation.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.relation[i] = add_ck(r.relation[i], mul_ck(br[i][j], alpha[j]));
    Coeff gc = vector_content(r.relation);
    for (auto& e : r.relation) e /= gc;

    int k = -1;
    for (int i = 0; i < n; ++i)
        if (r.relation[i] == 1 || r.relation[i] == -1) k = i;
    if (k < 0) throw NoEliminableVariable();
    r.eliminated = k;
    int vi = 0;
    for (int i = 0; i < n; ++i)
        if (i != k) r.vars[vi++] = i;

    // x_k = -(c_i y + c_j z) / c_k with c_k = ±1
    Vec u(n, 0), w(n, 0);
    u[r.vars[0]] = 1;
    u[k] = -r.relation[k] * r.relation[r.vars[0]];
    w[r.vars[1]] = 1;
    w[k] = -r.relation[k] * r.relation[r.vars[1]];
    r.form.a = quad(br, u);
    r.form.c = quad(br, w);
    r.form.b = mul_ck(2, pair_q(br, u, w));
    r.form.scale = Rat(gB);
    if (target_norm % gB != 0) {
        r.target_integral = false;
        r.target = 0;
    } else {
        r.target = target_norm / gB;
    }
    return r;
}

std::optional<std::pair<LinearForm, LinearForm>> factor_form(const BinaryQuadraticForm& f) {
    if (f.a == 0) {
        // b yz + c z^2 = z (b y + c z)
        return std::make_pair(LinearForm{0, 1}, LinearForm{f.b, f.c});
    }
    Coeff disc = mul_ck(f.b, f.b) - mul_ck(4, mul_ck(f.a, f.c));
    auto d = perfect_sqrt(disc);
    if (!d) return std::nullopt;
    // a (y - r1 z)(y - r2 z) with rational roots r = (-b ± d) / (2a)
    Rat r1 = Rat(-f.b + *d) / Rat(2 * f.a);
    Rat r2 = Rat(-f.b - *d) / Rat(2 * f.a);
    Coeff m1 = BigInt(denominator(r1)).convert_to<Coeff>();
    Coeff n1 = -BigInt(numerator(r1)).convert_to<Coeff>();
    Coeff m2 = BigInt(denominator(r2)).convert_to<Coeff>();
    Coeff n2 = -BigInt(numerator(r2)).convert_to<Coeff>();
    if (f.a % (m1 * m2) != 0) throw KmcError("internal: non-integral quadratic factorization");
    Coeff s = f.a / (m1 * m2);
    LinearForm l1{s * m1, s * n1}, l2{m2, n2};
    // sanity: the product reproduces the form
    if (l1.p * l2.p != f.a || l1.p * l2.q + l1.q * l2.p != f.b || l1.q * l2.q != f.c)
        throw KmcError("internal: bad quadratic factorization");
    return std::make_pair(l1, l2);
}

std::vector<std::pair<Coeff, Coeff>> solve_factored(const LinearForm& l1, const LinearForm& l2,
                                                    Coeff value) {
    if (value == 0) throw ZeroTarget();
    Coeff det = l1.p * l2.q - l1.q * l2.p;
    if (det == 0) throw DegenerateForm();
    std::set<std::pair<Coeff, Coeff>> sols;
    Coeff av = value < 0 ? -value : value;
    for (Coeff d1 = 1; d1 * d1 <= av; ++d1) {
        if (av % d1 != 0) continue;
        for (Coeff a : {d1, av / d1}) {
            for (int sign : {1, -1}) {
                Coeff u = sign * a, v = value / u;
                // l1 = u, l2 = v
                Coeff ynum = u * l2.q - v * l1.q;
                Coeff znum = v * l1.p - u * l2.p;
                if (ynum % det != 0 || znum % det != 0) continue;
                sols.insert({ynum / det, znum / det});
            }
        }
    }
    return {sols.begin(), sols.end()};
}

std::optional<CongruenceCertificate> congruence_scan(const RootSystem& sys, const Vec& alpha,
                                                     Coeff reduced_target, Coeff m) {
    if (m > 64) throw ModulusTooLarge(m);
    if (m < 2) throw KmcError("congruence modulus must be at least 2");
    int n = sys.g.rank;
    double total = std::pow((double)m, n);
    if (total > 2e8) throw KmcError("congruence scan too large for this rank and modulus");
    Coeff gB = matrix_content(sys.sym.b);
    IMat br = reduced_bilinear(sys.sym, gB);
    Vec c(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] = add_ck(c[i], mul_ck(br[i][j], alpha[j]));
    Coeff gc = vector_content(c);
    for (auto& e : c) e /= gc;
    Coeff t = reduced_target;
    // divisibility conditions making alpha+beta a real root:
    // (x_i + alpha_i) * br_ii ≡ 0 (mod s), s = |alpha+beta|^2 (orthogonal sum)
    Coeff s = quad(br, alpha) + t;
    std::vector<Coeff> cond_mod(n, 1);
    bool evaluable = s > 0;
    for (int i = 0; i < n && evaluable; ++i) {
        cond_mod[i] = s / std::gcd(br[i][i], s);
        if (cond_mod[i] > 1 && m % cond_mod[i] != 0) evaluable = false;
    }

    Vec x(n, 0);
    long long admissible = 0;
    bool all_force = true;
    while (true) {
        Coeff lin = 0, q = 0;
        for (int i = 0; i < n; ++i) {
            lin += c[i] * x[i];
            for (int j = 0; j < n; ++j) q += br[i][j] * x[i] * x[j];
        }
        if (((lin % m) + m) % m == 0 && (((q - t) % m) + m) % m == 0) {
            ++admissible;
            if (evaluable && all_force) {
                for (int i = 0; i < n; ++i) {
                    Coeff mi = cond_mod[i];
                    if (mi <= 1) continue;
                    if (((x[i] + alpha[i]) % mi + mi) % mi != 0) {
                        all_force = false;
                        break;
                    }
                }
            }
        }
        int k = 0;
        while (k < n && x[k] == m - 1) x[k++] = 0;
        if (k == n) break;
        ++x[k];
    }
    if (admissible == 0)
        return CongruenceCertificate{CongruenceCertificate::NoSolutions, m, t, 0};
    if (evaluable && all_force)
        return CongruenceCertificate{CongruenceCertificate::AllForceRealSum, m, t, admissible};
    return std::nullopt;
}

namespace {

constexpr Coeff kCertifyCap = 40;
constexpr Coeff kModulusSchedule[] = {2, 3, 4, 8, 12, 16, 24};

// Reconstruct the full coefficient vector from a binary-form solution and
// sign-normalize to a positive vector; nullopt if the signs are mixed.
std::optional<Vec> lift_solution(const EliminationResult& e, Coeff y, Coeff z, int n) {
    Vec v(n, 0);
    v[e.vars[0]] = y;
    v[e.vars[1]] = z;
    v[e.eliminated] =
        -e.relation[e.eliminated] * (e.relation[e.vars[0]] * y + e.relation[e.vars[1]] * z);
    if (is_zero(v)) return std::nullopt;
    if (is_nonpos(v)) v = negate(v);
    if (!is_nonneg(v)) return std::nullopt;
    return v;
}

}  // namespace

SmallCentralizerResult certify_small_centralizer(const RootSystem& sys, const Vec& alpha) {
    if (sys.g.rank != 3) throw RankMismatch("small-centralizer certification requires rank 3");
    SmallCentralizerResult res;
    Subsystem zs = compute_Zs(sys, alpha, kCertifyCap);
    if (zs.members.size() >= 2) {
        res.kind = SmallCentralizerResult::TwoRoots;
        res.roots = {zs.members[0], zs.members[1]};
        return res;
    }
    Coeff gB = matrix_content(sys.sym.b);
    std::set<Coeff> norms;
    for (int i = 0; i < 3; ++i) norms.insert(sys.sym.b[i][i] / gB);

    bool all_certified = true;
    std::set<Vec> members(zs.members.begin(), zs.members.end());
    for (Coeff t : norms) {
        NormCertificate nc;
        nc.norm = t;
        bool certified = false;
        try {
            EliminationResult elim = eliminate(sys.sym, alpha, t * gB);
            nc.elim = elim;
            if (!elim.target_integral) {
                nc.method = NormCertificate::IntegralityGap;
                certified = true;
            } else if (auto fac = factor_form(elim.form)) {
                try {
                    auto sols = solve_factored(fac->first, fac->second, elim.target);
                    for (auto [y, z] : sols) {
                        auto v = lift_solution(elim, y, z, 3);
                        if (!v) continue;
                        if (is_real_root(sys, *v) && is_strictly_orthogonal(sys, alpha, *v)) {
                            nc.surviving_roots.push_back(*v);
                            members.insert(*v);
                        }
                    }
                    nc.method = NormCertificate::Factored;
                    certified = true;
                } catch (const DegenerateForm&) {
                } catch (const ZeroTarget&) {
                }
            }
        } catch (const NoEliminableVariable&) {
        }
        if (!certified) {
            for (Coeff m : kModulusSchedule) {
                if (auto cert = congruence_scan(sys, alpha, t, m)) {
                    nc.method = NormCertificate::Congruence;
                    nc.cong = cert;
                    certified = true;
                    break;
                }
            }
        }
        if (!certified) all_certified = false;
        res.certs.push_back(std::move(nc));
    }
    if (!all_certified) {
        res.kind = SmallCentralizerResult::Undecided;
        res.roots.assign(members.begin(), members.end());
        return res;
    }
    // consistency: every enumerated member's norm class must have been handled
    // by the complete factored route, which re-finds it
    for (const auto& v : zs.members) {
        bool found = false;
        for (const auto& nc : res.certs)
            for (const auto& r : nc.surviving_roots)
                if (r == v) found = true;
        if (!found) throw KmcError("internal: enumerated member escaped certification");
    }
    res.roots.assign(members.begin(), members.end());
    if (members.empty())
        res.kind = SmallCentralizerResult::Empty;
    else if (members.size() == 1)
        res.kind = SmallCentralizerResult::A1;
    else
        res.kind = SmallCentralizerResult::TwoRoots;
    return res;
}

}  // namespace kmc

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>

#include "kmc/rootspace.hpp"

using namespace kmc;

namespace {

// brute force: all nonnegative integer vectors of height <= cap passing
// is_real_root
std::vector<Vec> brute_positive_real_roots(const RootSystem& sys, Coeff cap) {
    std::vector<Vec> out;
    int n = sys.g.rank;
    Vec v(n, 0);
    std::function<void(int, Coeff)> rec = [&](int i, Coeff left) {
        if (i == n) {
            if (!is_zero(v) && is_real_root(sys, v)) out.push_back(v);
            return;
        }
        for (Coeff c = 0; c <= left; ++c) {
            v[i] = c;
            rec(i + 1, left - c);
        }
        v[i] = 0;
    };
    rec(0, cap);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

RootSystem tri_pendant() {
    // triangle 1-2-3 with pendant 4 on vertex 1, all single bonds
    return make_system(validate_gcm({{2, -1, -1, -1}, {-1, 2, -1, 0}, {-1, -1, 2, 0}, {-1, 0, 0, 2}}));
}

}  // namespace

TEST_CASE("bilinear and norms") {
    RootSystem a11 = make_system(affine_gcm_untwisted('A', 1));
    CHECK(norm2(a11.sym, {1, 1}) == 0);  // delta is isotropic
    RootSystem s = tri_pendant();
    CHECK(norm2(s.sym, {12, 5, 8, 6}) == 2);
    CHECK(bilinear(s.sym, {1, 0, 0, 0}, {1, 0, 0, 0}) == s.sym.b[0][0]);
    CHECK_THROWS_AS(bilinear(s.sym, {1, 0}, {1, 0, 0, 0}), RankMismatch);
}

TEST_CASE("is_real_root") {
    RootSystem s = tri_pendant();
    for (int i = 0; i < 4; ++i) {
        Vec e(4, 0);
        e[i] = 1;
        CHECK(is_real_root(s, e));
    }
    CHECK(is_real_root(s, {12, 5, 8, 6}));
    RootSystem a11 = make_system(affine_gcm_untwisted('A', 1));
    CHECK_FALSE(is_real_root(a11, {1, 1}));
    // indefinite systems are rejected
    IMat k5(5, Vec(5, -1));
    for (int i = 0; i < 5; ++i) k5[i][i] = 2;
    RootSystem bad = make_system(validate_gcm(k5));
    CHECK_THROWS_AS(is_real_root(bad, {1, 0, 0, 0, 0}), CriterionInapplicable);
}

TEST_CASE("reflect") {
    RootSystem a2 = make_system(finite_gcm('A', 2));
    CHECK(reflect(a2, {1, 0}, {1, 0}) == Vec{-1, 0});
    CHECK(reflect(a2, {1, 0}, {0, 1}) == Vec{1, 1});
    // fixed hyperplane and norm preservation
    RootSystem s = tri_pendant();
    Vec b = {12, 5, 8, 6};
    Vec a4 = {0, 0, 0, 1};
    CHECK(coroot_pairing(s, b, a4) == 0);
    CHECK(reflect(s, a4, b) == b);
    Vec r = reflect(s, {1, 0, 0, 0}, b);
    CHECK(norm2(s.sym, r) == norm2(s.sym, b));
    CHECK(reflect(s, {1, 0, 0, 0}, r) == b);
    CHECK_THROWS_AS(reflect(s, Vec{1, 1, 1, 1}, b), NotRealRoot);  // norm 0 vector
}

TEST_CASE("root strings") {
    // A_1 x A_1: orthogonal simples
    RootSystem aa = make_system(validate_gcm({{2, 0}, {0, 2}}));
    auto st = root_string(aa, {1, 0}, {0, 1});
    CHECK(st.p == 0);
    CHECK(st.q == 0);
    // C_2: alpha short simple, beta long simple -> (0,2)
    RootSystem c2 = make_system(finite_gcm('C', 2));
    auto st2 = root_string(c2, {1, 0}, {0, 1});
    CHECK(st2.p == 0);
    CHECK(st2.q == 2);
    CHECK_THROWS_AS(root_string(c2, {1, 0}, {1, 0}), SameRay);
    Vec m = {-1, 0};
    CHECK_THROWS_AS(root_string(c2, {1, 0}, m), SameRay);
    // p - q = <beta, alpha∨> across sampled pairs in G_2
    RootSystem g2 = make_system(finite_gcm('G', 2));
    auto roots = enumerate_positive_real_roots(g2, 10);
    for (const auto& a : roots)
        for (const auto& b : roots) {
            if (b == a || b == negate(a)) continue;
            auto s = root_string(g2, a, b);
            CHECK(s.p - s.q == coroot_pairing(g2, b, a));
        }
}

TEST_CASE("enumeration matches brute force oracle") {
    struct Case {
        Gcm g;
        Coeff cap;
    };
    std::vector<Case> cases;
    cases.push_back({finite_gcm('A', 2), 5});
    cases.push_back({finite_gcm('G', 2), 12});
    cases.push_back({finite_gcm('C', 3), 10});
    cases.push_back({affine_gcm_untwisted('A', 1), 9});
    cases.push_back({affine_gcm_twisted("a2even", 1), 9});
    cases.push_back({affine_gcm_untwisted('C', 2), 8});
    // rank-4 complete single-bond graph (hyperbolic)
    IMat k4(4, Vec(4, -1));
    for (int i = 0; i < 4; ++i) k4[i][i] = 2;
    cases.push_back({validate_gcm(k4), 10});
    cases.push_back({tri_pendant().g, 8});
    // rank-3 hyperbolic with an asymmetric edge
    cases.push_back({validate_gcm({{2, -2, -1}, {-1, 2, -1}, {-1, -2, 2}}), 8});
    for (const auto& c : cases) {
        RootSystem sys = make_system(c.g);
        auto fast = enumerate_positive_real_roots(sys, c.cap);
        auto slow = brute_positive_real_roots(sys, c.cap);
        CHECK(fast == slow);
    }
}

TEST_CASE("enumeration specifics") {
    RootSystem a2 = make_system(finite_gcm('A', 2));
    auto r = enumerate_positive_real_roots(a2, 5);
    CHECK(r == std::vector<Vec>{{0, 1}, {1, 0}, {1, 1}});
    RootSystem a11 = make_system(affine_gcm_untwisted('A', 1));
    auto r2 = enumerate_positive_real_roots(a11, 5);
    CHECK(r2 == std::vector<Vec>{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}});
    // monotone prefix property
    RootSystem g2 = make_system(finite_gcm('G', 2));
    auto small = enumerate_positive_real_roots(g2, 3);
    auto big = enumerate_positive_real_roots(g2, 5);
    CHECK(std::equal(small.begin(), small.end(), big.begin()));
}

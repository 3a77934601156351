#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kmc/centralizer.hpp"

using namespace kmc;

namespace {

RootSystem tri_pendant() {
    return make_system(validate_gcm({{2, -1, -1, -1}, {-1, 2, -1, 0}, {-1, -1, 2, 0}, {-1, 0, 0, 2}}));
}

RootSystem k4() {
    IMat m(4, Vec(4, -1));
    for (int i = 0; i < 4; ++i) m[i][i] = 2;
    return make_system(validate_gcm(m));
}

}  // namespace

TEST_CASE("is_strictly_orthogonal basics") {
    RootSystem a2 = make_system(finite_gcm('A', 2));
    CHECK_FALSE(is_strictly_orthogonal(a2, {1, 0}, {0, 1}));
    RootSystem aa = make_system(validate_gcm({{2, 0}, {0, 2}}));
    CHECK(is_strictly_orthogonal(aa, {1, 0}, {0, 1}));
    // predicate symmetry in ±beta
    RootSystem s = tri_pendant();
    Vec a4 = {0, 0, 0, 1}, b = {12, 5, 8, 6};
    CHECK(is_strictly_orthogonal(s, a4, b));
    CHECK(is_strictly_orthogonal(s, a4, negate(b)));
    CHECK_THROWS_AS(is_strictly_orthogonal(s, Vec{1, 1, 1, 1}, b), NotRealRoot);
}

TEST_CASE("complete graphs have empty centralizers") {
    for (int cap : {10, 40}) {
        Subsystem zs = compute_Zs(k4(), {1, 0, 0, 0}, cap);
        CHECK(zs.members.empty());
    }
    RootSystem a2 = make_system(finite_gcm('A', 2));
    CHECK(compute_Zs(a2, {1, 0}, 10).members.empty());
    RootSystem a21 = make_system(affine_gcm_untwisted('A', 2));
    CHECK(compute_Zs(a21, {1, 0, 0}, 15).members.empty());
}

TEST_CASE("affine example: A_4^(1) long root centralizer contains A_2^(1)") {
    RootSystem s = make_system(affine_gcm_untwisted('A', 4));
    Vec alpha = {1, 0, 0, 0, 0};
    Subsystem zs = compute_Zs(s, alpha, 25);
    CHECK(!zs.members.empty());
    for (const auto& m : zs.members) CHECK(is_strictly_orthogonal(s, alpha, m));
}

TEST_CASE("scan strategy agrees with generic filter") {
    // force both paths on hyperbolic systems at the same cap and compare
    RootSystem s = tri_pendant();
    Vec a4 = {0, 0, 0, 1};
    Subsystem small = compute_Zs(s, a4, 40);          // generic path (cap <= 60)
    Subsystem big = compute_Zs(s, a4, 70);            // scan path
    std::vector<Vec> trunc;
    for (const auto& v : big.members)
        if (height(v) <= 40) trunc.push_back(v);
    CHECK(small.members == trunc);
    // and on a multiply-laced hyperbolic system
    RootSystem h = make_system(validate_gcm({{2, -2, -1}, {-1, 2, -1}, {-1, -2, 2}}));
    // rank 3 uses the generic path; compare against a rank-4 system instead
    RootSystem h4 = make_system(validate_gcm(
        {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}));
    if (h4.cls == SystemClass::Hyperbolic) {
        Vec a = {0, 0, 0, 1};
        Subsystem g1 = compute_Zs(h4, a, 30);
        Subsystem g2 = compute_Zs(h4, a, 61);
        std::vector<Vec> t2;
        for (const auto& v : g2.members)
            if (height(v) <= 30) t2.push_back(v);
        CHECK(g1.members == t2);
    }
    (void)h;
}

TEST_CASE("closure reports") {
    RootSystem s = tri_pendant();
    Subsystem zs = compute_Zs(s, {0, 0, 0, 1}, 40);
    CHECK(!zs.members.empty());
    auto sum = check_closure_under_sum(zs);
    CHECK(sum.ok);
    CHECK(sum.violations.empty());
    auto weyl = check_weyl_closure(zs);
    CHECK(weyl.ok);
    // empty subsystem: vacuous pass
    Subsystem empty = compute_Zs(k4(), {1, 0, 0, 0}, 10);
    CHECK(check_closure_under_sum(empty).ok);
    CHECK(check_weyl_closure(empty).ok);
    // A_4^(1) affine case at cap 20
    RootSystem a41 = make_system(affine_gcm_untwisted('A', 4));
    Subsystem za = compute_Zs(a41, {1, 0, 0, 0, 0}, 20);
    CHECK(check_closure_under_sum(za).ok);
    CHECK(check_weyl_closure(za).ok);
}

TEST_CASE("monotone cap prefix") {
    RootSystem s = tri_pendant();
    auto z1 = compute_Zs(s, {0, 0, 0, 1}, 20);
    auto z2 = compute_Zs(s, {0, 0, 0, 1}, 35);
    CHECK(z1.members.size() <= z2.members.size());
    CHECK(std::equal(z1.members.begin(), z1.members.end(), z2.members.begin()));
}

TEST_CASE("first infinite-family members appear in Z_s") {
    RootSystem s = tri_pendant();
    Subsystem zs = compute_Zs(s, {0, 0, 0, 1}, 70);
    CHECK(subsystem_contains(zs, {0, 0, 1, 0}));   // beta_0
    CHECK(subsystem_contains(zs, {0, 1, 0, 0}));   // beta'_0
    CHECK(subsystem_contains(zs, {12, 5, 8, 6}));  // beta_1
    CHECK(subsystem_contains(zs, {12, 8, 5, 6}));  // beta'_1
    CHECK_FALSE(subsystem_contains(zs, {1, 0, 0, 0}));
}

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace kmc {

// Root coefficients and bilinear-form entries. Heights in this project stay
// below a few thousand, so 64-bit integers with checked arithmetic suffice;
// anything that can genuinely blow up (LP pivots, certificates) goes through
// exact rationals instead.
using Coeff = long long;
using Vec = std::vector<Coeff>;
using IMat = std::vector<Vec>;

using BigInt = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

class KmcError : public std::runtime_error {
public:
    explicit KmcError(const std::string& what) : std::runtime_error(what) {}
};

class OverflowError : public KmcError {
public:
    explicit OverflowError(const std::string& what) : KmcError(what) {}
};

class RankMismatch : public KmcError {
public:
    explicit RankMismatch(const std::string& what) : KmcError(what) {}
};

inline Coeff add_ck(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Coeff mul_ck(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Coeff height(const Vec& v) {
    Coeff h = 0;
    for (Coeff c : v) h = add_ck(h, c);
    return h;
}

inline bool is_nonneg(const Vec& v) {
    for (Coeff c : v)
        if (c < 0) return false;
    return true;
}

inline bool is_nonpos(const Vec& v) {
    for (Coeff c : v)
        if (c > 0) return false;
    return true;
}

inline bool is_zero(const Vec& v) {
    for (Coeff c : v)
        if (c != 0) return false;
    return true;
}

inline Vec negate(const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw RankMismatch("vector sizes differ");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add_ck(a[i], b[i]);
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw RankMismatch("vector sizes differ");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add_ck(a[i], -b[i]);
    return r;
}

// Canonical total order on root vectors: height first, then lexicographic.
inline bool canonical_less(const Vec& a, const Vec& b) {
    Coeff ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
}

}  // namespace kmc

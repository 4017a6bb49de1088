#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <string>
#include <vector>

namespace latcount {

// Arbitrary-precision integers and rationals.  All exact arithmetic in the
// library goes through these aliases; nothing downstream assumes a machine
// word ever suffices.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// num/den with canonicalization; den may be negative on input.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Smallest integer s with s*s >= a (a >= 0).
inline Int isqrt_ceil(const Int& a) {
    Int s;
    mpz_sqrt(s.get_mpz_t(), a.get_mpz_t());
    if (s * s < a) s += 1;
    return s;
}

inline std::string join_ints(const std::vector<Int>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i].get_str();
    }
    return out;
}

// Work budget for exhaustive scans.  LATCOUNT_BUDGET overrides the default.
inline unsigned long work_budget() {
    if (const char* s = std::getenv("LATCOUNT_BUDGET")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && v > 0) return v;
    }
    return 10000000UL;
}

}  // namespace latcount

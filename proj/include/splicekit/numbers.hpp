#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace splicekit {

// Exact arithmetic throughout: unbounded integers, rationals in lowest
// terms with positive denominator (both are GMP canonical forms).
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int gcd_all(const std::vector<Int>& xs) {
    Int g = 0;
    for (const auto& x : xs) g = gcd(g, x);
    return g;
}

// Exact quotient; throws if b does not divide a.
inline Int divexact(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::domain_error("inexact division");
    return q;
}

// Least non-negative residue.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool fits_u64(const Int& v) {
    return v >= 0 && mpz_fits_ulong_p(v.get_mpz_t());
}

inline std::uint64_t to_u64(const Int& v) {
    if (!fits_u64(v)) throw std::overflow_error("value too large: " + v.get_str());
    return mpz_get_ui(v.get_mpz_t());
}

}  // namespace splicekit

#pragma once

// Exact integer number theory and quadratic Gauss sums. Complex exponentials
// are always evaluated from rational phases reduced modulo 1 in integer
// arithmetic first, so the phase error stays at machine epsilon even when the
// raw phase numerator is large.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "entcert/errors.hpp"

namespace entcert::numtheory {

using cplx = std::complex<double>;
using i64 = std::int64_t;
using i128 = __int128;

// exp(2*pi*i * num/den), den != 0. num/den is reduced mod 1 exactly.
inline cplx unit_phase(i64 num, i64 den) {
    if (den == 0) throw ZeroProduct("unit_phase: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i64 r = num % den;
    if (r < 0) r += den;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                               static_cast<double>(den));
}

// (a*b) mod m with m > 0, result in [0, m).
inline i64 mul_mod(i64 a, i64 b, i64 m) {
    i128 r = static_cast<i128>(a) * b % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

inline i64 pos_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Jacobi symbol (a/c) for odd c >= 1.
inline int jacobi_symbol(i64 a, i64 c) {
    if (c < 1 || c % 2 == 0) throw EvenModulus("jacobi_symbol: c must be odd and positive");
    a = pos_mod(a, c);
    int sign = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            // (2/c) = -1 iff c = 3,5 mod 8
            i64 cm8 = c % 8;
            if (cm8 == 3 || cm8 == 5) sign = -sign;
        }
        std::swap(a, c);
        if (a % 4 == 3 && c % 4 == 3) sign = -sign;
        a %= c;
    }
    return c == 1 ? sign : 0;
}

// Modular inverse of a mod m (m >= 1, gcd(a,m) = 1), extended Euclid.
inline i64 mod_inverse(i64 a, i64 m) {
    if (m == 1) return 0;
    a = pos_mod(a, m);
    i64 r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw NotCoprime("mod_inverse: arguments are not coprime");
    return pos_mod(s0, m);
}

/// G(a,b,c) = sum_{n=0}^{c-1} exp(2*pi*i (a n^2 + b n)/c), by literal summation.
inline cplx gauss_sum_direct(i64 a, i64 b, i64 c) {
    if (c < 1) throw RangeExceeded("gauss_sum_direct: c must be >= 1");
    i64 am = pos_mod(a, c), bm = pos_mod(b, c);
    cplx sum{0.0, 0.0};
    for (i64 n = 0; n < c; ++n) {
        i64 t = (mul_mod(mul_mod(n, n, c), am, c) + mul_mod(bm, n, c)) % c;
        sum += unit_phase(t, c);
    }
    return sum;
}

/// Closed form for G(a,b,c) with odd c and gcd(a,c)=1:
///   eps_c sqrt(c) (a/c) exp(-2*pi*i psi(a) b^2 / c),  4 psi(a) a = 1 mod c.
inline cplx gauss_sum_closed(i64 a, i64 b, i64 c) {
    if (c < 1 || c % 2 == 0) throw EvenModulus("gauss_sum_closed: c must be odd and positive");
    if (std::gcd(pos_mod(a, c) == 0 ? c : pos_mod(a, c), c) != 1)
        throw NotCoprime("gauss_sum_closed: gcd(a,c) must be 1");
    const cplx eps = (c % 4 == 1) ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
    const i64 psi = mod_inverse(mul_mod(4, pos_mod(a, c), c), c);
    const i64 phase_num = mul_mod(psi, mul_mod(pos_mod(b, c), pos_mod(b, c), c), c);
    return eps * std::sqrt(static_cast<double>(c)) *
           static_cast<double>(jacobi_symbol(a, c)) * unit_phase(-phase_num, c);
}

struct GaussSumResult {
    cplx value;
    double modulus_magnitude;  // |value|, expected sqrt(c) when gcd(a,c)=1
    bool closed_form_used;
};

/// Evaluates G(a,b,c) by the closed form when it applies, else directly.
inline GaussSumResult gauss_sum(i64 a, i64 b, i64 c) {
    if (c >= 1 && c % 2 == 1 && std::gcd(pos_mod(a, c) == 0 ? c : pos_mod(a, c), c) == 1) {
        cplx v = gauss_sum_closed(a, b, c);
        return {v, std::abs(v), true};
    }
    cplx v = gauss_sum_direct(a, b, c);
    return {v, std::abs(v), false};
}

/// S(a,b,c) = sum_{n=0}^{|c|-1} exp(i*pi (a n^2 + b n)/c); ac != 0, ac+b even.
inline cplx generalized_gauss_sum(i64 a, i64 b, i64 c) {
    if (a == 0 || c == 0) throw ZeroProduct("generalized_gauss_sum: ac must be nonzero");
    if (pos_mod(a * c + b, 2) != 0)
        throw ParityViolation("generalized_gauss_sum: ac+b must be even");
    const i64 n_terms = std::llabs(c);
    cplx sum{0.0, 0.0};
    for (i64 n = 0; n < n_terms; ++n) {
        // phase in turns: (a n^2 + b n) / (2c)
        sum += unit_phase(a * n * n + b * n, 2 * c);
    }
    return sum;
}

/// |S(a,b,c) - sqrt|c/a| e^{i pi (|ac|-b^2)/(4ac)} S(-c,-b,a)|, the residual of
/// the reciprocity identity for generalized Gauss sums.
inline double gauss_reciprocity_residual(i64 a, i64 b, i64 c) {
    const cplx lhs = generalized_gauss_sum(a, b, c);
    const cplx phase = unit_phase(std::llabs(a * c) - b * b, 8 * a * c);
    const cplx rhs = std::sqrt(std::abs(static_cast<double>(c) / static_cast<double>(a))) *
                     phase * generalized_gauss_sum(-c, -b, a);
    return std::abs(lhs - rhs);
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

/// Smallest prime p >= n, for 2 <= n <= 10^6.
inline i64 smallest_prime_geq(i64 n) {
    if (n < 2 || n > 1'000'000) throw RangeExceeded("smallest_prime_geq: need 2 <= n <= 1e6");
    i64 p = n;
    while (!is_prime(p)) ++p;
    return p;
}

/// True iff q = 1 or q = p^r for an odd prime p and r >= 1.
inline bool is_odd_prime_power_or_one(i64 q) {
    if (q == 1) return true;
    if (q < 3 || q % 2 == 0) return false;
    i64 p = 3;
    while (p * p <= q && q % p != 0) p += 2;
    if (q % p != 0) p = q;  // q itself prime
    if (!is_prime(p)) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

// Shared precondition of the three-MUBs construction: p_r = p^r (odd prime
// power or 1) with gcd(d, p_r) = 1 and d > p_r.
inline void validate_quadratic_params(i64 d, i64 p_r) {
    if (d < 2) throw BadModulusParameter("d must be >= 2");
    if (!is_odd_prime_power_or_one(p_r))
        throw BadModulusParameter("p_r must be an odd prime power or 1");
    if (std::gcd(d, p_r) != 1) throw BadModulusParameter("gcd(d, p_r) must be 1");
    if (d <= p_r) throw BadModulusParameter("d must exceed p_r");
}

/// |sum_j exp(2*pi*i ((d-p_r) j^2/(2d) + k j/d))|; equals sqrt(d) whenever the
/// quadratic-basis parameters are admissible.
inline double lemma2_magnitude(i64 d, i64 k, i64 p_r) {
    validate_quadratic_params(d, p_r);
    cplx sum{0.0, 0.0};
    for (i64 j = 0; j < d; ++j)
        sum += unit_phase((d - p_r) * j * j + 2 * k * j, 2 * d);
    return std::abs(sum);
}

/// gcd identities behind the quadratic construction:
/// odd d: gcd(d, (d-p^r)/2) = 1;  even d: gcd(d-p^r, d/2) = 1.
inline bool coprimality_observations_check(i64 d, i64 p, i64 r) {
    if (!is_prime(p) || p % 2 == 0) throw BadModulusParameter("p must be an odd prime");
    if (std::gcd(d, p) != 1) throw BadModulusParameter("gcd(d, p) must be 1");
    if (r < 0) throw BadModulusParameter("r must be >= 0");
    i64 pr = 1;
    for (i64 i = 0; i < r; ++i) {
        if (pr > (1LL << 40) / p) throw RangeExceeded("p^r too large");
        pr *= p;
    }
    if (d % 2 == 1) return std::gcd(d, std::llabs((d - pr) / 2)) == 1;
    return std::gcd(std::llabs(d - pr), d / 2) == 1;
}

}  // namespace entcert::numtheory

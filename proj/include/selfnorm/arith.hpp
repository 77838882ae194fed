#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace selfnorm {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x_2: the largest power of two dividing x (x > 0).
inline u64 two_part(u64 x) { return x & (~x + 1); }

// x_{2'}: x divided by its 2-part.
inline u64 odd_part(u64 x) { return x / two_part(x); }

inline bool is_power_of_two(u64 x) { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned log2_exact(u64 x) {
    unsigned r = 0;
    while (x > 1) {
        x >>= 1;
        ++r;
    }
    return r;
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, b = ((a % m) + m) % m;
    while (b) {
        i64 t = g / b;
        std::tie(g, b) = std::make_pair(b, g - t * b);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw InvalidArgument("invmod: not invertible");
    return static_cast<u64>(((x % m) + m) % m);
}

bool is_prime(u64 n);

// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

std::vector<u64> prime_divisors(u64 n);

std::vector<u64> divisors(u64 n);

// Decomposes q = p^a; throws if q is not a prime power.
std::pair<u64, unsigned> prime_power(u64 q);

u64 euler_phi(u64 n);

// Multiplicative order of a modulo m (gcd(a, m) = 1).
u64 mult_order(u64 a, u64 m);

// Legendre symbol (a/p) for an odd prime p.
int legendre(i64 a, u64 p);

}  // namespace selfnorm

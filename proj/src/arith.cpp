#include "selfnorm/arith.hpp"

#include <algorithm>

namespace selfnorm {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t cur = out.size();
        u64 pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<u64, unsigned> prime_power(u64 q) {
    auto f = factorize(q);
    if (f.size() != 1) throw InvalidArgument("not a prime power: " + std::to_string(q));
    return f[0];
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    if (std::gcd(a % m, m) != 1) throw InvalidArgument("mult_order: not a unit");
    u64 ord = euler_phi(m);
    for (auto [p, e] : factorize(ord)) {
        for (unsigned i = 0; i < e && ord % p == 0 && powmod(a, ord / p, m) == 1; ++i) ord /= p;
    }
    return ord;
}

int legendre(i64 a, u64 p) {
    u64 r = powmod(static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p)),
                   (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

}  // namespace selfnorm

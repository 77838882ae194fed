#include "selfnorm/cyclotomic.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace selfnorm {

using i128 = __int128;

struct CycloData {
    u64 e = 1;
    u64 phi = 1;
    std::vector<i64> Phi;  // monic, length phi + 1, low to high
    std::vector<u64> primes;
};

namespace {

std::vector<i64> cyclotomic_poly(u64 e) {
    // x^e - 1 divided by Phi_d for every proper divisor d of e.
    std::vector<i64> num(e + 1, 0);
    num[0] = -1;
    num[e] = 1;
    for (u64 d : divisors(e)) {
        if (d == e) continue;
        std::vector<i64> den = cyclotomic_poly(d);
        std::vector<i64> quo(num.size() - den.size() + 1, 0);
        for (std::size_t i = quo.size(); i-- > 0;) {
            i64 c = num[i + den.size() - 1];
            quo[i] = c;
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
        num = quo;
    }
    return num;
}

const CycloData* cyclo_data(u64 e) {
    static std::mutex mu;
    static std::map<u64, std::unique_ptr<CycloData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[e];
    if (!slot) {
        auto d = std::make_unique<CycloData>();
        d->e = e;
        d->phi = euler_phi(e);
        d->Phi = cyclotomic_poly(e);
        d->primes = prime_divisors(e);
        slot = std::move(d);
    }
    return slot.get();
}

bool is_zero_coef(const i128& x) { return x == 0; }
bool is_zero_coef(const mpq_class& x) { return sgn(x) == 0; }

// Reduces an exponent-space vector modulo Phi_e down to length phi(e).
template <class T>
void reduce_mod_phi(std::vector<T>& a, const CycloData& d) {
    const std::size_t phi = d.phi;
    for (std::size_t i = a.size(); i-- > phi;) {
        if (is_zero_coef(a[i])) continue;
        T c = a[i];
        for (std::size_t j = 0; j <= phi; ++j) {
            if (d.Phi[j] != 0) a[i - phi + j] -= c * T(d.Phi[j]);
        }
    }
    a.resize(phi, T(0));
}

// If the value with coefficients c in Q(z_e) lies in Q(z_{e/p}), writes its
// coefficients there and returns true.
template <class T>
bool try_descend(const CycloData& d, u64 p, const std::vector<T>& c, std::vector<T>& out) {
    const u64 e = d.e;
    const u64 m = e / p;
    const CycloData& dm = *cyclo_data(m);
    if (m % p == 0) {
        for (u64 k = 0; k < c.size(); ++k)
            if (k % p != 0 && !is_zero_coef(c[k])) return false;
        out.assign(dm.phi, T(0));
        for (u64 j = 0; j < dm.phi; ++j) out[j] = c[p * j];
        return true;
    }
    // Q(z_e) = Q(z_m) (x) Q(z_p) with z_e^k = z_m^(k u) z_p^(k v).
    const u64 u = m == 1 ? 0 : invmod(static_cast<i64>(p), static_cast<i64>(m));
    const u64 v = invmod(static_cast<i64>(m), static_cast<i64>(p));
    std::vector<std::vector<T>> A(p - 1, std::vector<T>(m, T(0)));
    for (u64 k = 0; k < c.size(); ++k) {
        if (is_zero_coef(c[k])) continue;
        u64 i = m == 1 ? 0 : (k % m) * u % m;
        u64 j = (k % p) * v % p;
        if (j == p - 1) {
            for (u64 jj = 0; jj + 1 < p; ++jj) A[jj][i] -= c[k];
        } else {
            A[j][i] += c[k];
        }
    }
    for (u64 j = 0; j + 1 < p; ++j) reduce_mod_phi(A[j], dm);
    for (u64 j = 1; j + 1 < p; ++j)
        for (const T& x : A[j])
            if (!is_zero_coef(x)) return false;
    out = std::move(A[0]);
    return true;
}

template <class T>
const CycloData* minimize(const CycloData* d, std::vector<T>& c) {
    bool changed = true;
    while (changed && d->e > 1) {
        changed = false;
        for (u64 p : d->primes) {
            std::vector<T> out;
            if (try_descend(*d, p, c, out)) {
                d = cyclo_data(d->e / p);
                c = std::move(out);
                changed = true;
                break;
            }
        }
    }
    return d;
}

bool fits_small(const std::vector<mpq_class>& c) {
    for (const auto& x : c) {
        if (x.get_den() != 1) return false;
        if (!x.get_num().fits_slong_p()) return false;
        if (abs(x.get_num()) > (long{1} << 40)) return false;
    }
    return true;
}

mpq_class to_mpq(i128 x) {
    if (x >= std::numeric_limits<long>::min() && x <= std::numeric_limits<long>::max())
        return mpq_class(static_cast<long>(x));
    bool neg = x < 0;
    unsigned __int128 ux = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(ux >> 64)), lo(static_cast<unsigned long>(ux));
    mpz_class r = (hi << 64) + lo;
    if (neg) r = -r;
    return mpq_class(r);
}

u64 mod_exp(i64 k, u64 e) {
    i64 ee = static_cast<i64>(e);
    return static_cast<u64>(((k % ee) + ee) % ee);
}

}  // namespace

Cyclotomic::Cyclotomic() : d_(cyclo_data(1)), c_{mpq_class(0)} {}

Cyclotomic::Cyclotomic(long n) : d_(cyclo_data(1)), c_{mpq_class(n)} {}

Cyclotomic::Cyclotomic(const mpq_class& r) : d_(cyclo_data(1)), c_{r} {}

Cyclotomic::Cyclotomic(const CycloData* d, std::vector<mpq_class> c) : d_(d), c_(std::move(c)) { normalize(); }

void Cyclotomic::normalize() {
    for (auto& x : c_) x.canonicalize();
    if (fits_small(c_)) {
        std::vector<i128> s(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) s[i] = c_[i].get_num().get_si();
        d_ = minimize(d_, s);
        c_.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) c_[i] = to_mpq(s[i]);
    } else {
        d_ = minimize(d_, c_);
    }
}

Cyclotomic Cyclotomic::root_of_unity(u64 e, i64 k) {
    if (e == 0) throw InvalidArgument("root_of_unity: conductor 0");
    std::vector<i64> m(e, 0);
    m[mod_exp(k, e)] = 1;
    return from_exponents(e, m);
}

Cyclotomic Cyclotomic::from_exponents(u64 e, const std::vector<i64>& mult) {
    if (mult.size() != e) throw InvalidArgument("from_exponents: length must equal conductor");
    const CycloData* d = cyclo_data(e);
    std::vector<i128> a(mult.begin(), mult.end());
    reduce_mod_phi(a, *d);
    d = minimize(d, a);
    std::vector<mpq_class> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = to_mpq(a[i]);
    Cyclotomic r;
    r.d_ = d;
    r.c_ = std::move(c);
    return r;
}

Cyclotomic Cyclotomic::from_exponents(u64 e, const std::vector<mpq_class>& mult) {
    if (mult.size() != e) throw InvalidArgument("from_exponents: length must equal conductor");
    const CycloData* d = cyclo_data(e);
    std::vector<mpq_class> a(mult);
    reduce_mod_phi(a, *d);
    return Cyclotomic(d, std::move(a));
}

u64 Cyclotomic::conductor() const { return d_->e; }

bool Cyclotomic::is_zero() const { return d_->e == 1 && sgn(c_[0]) == 0; }

bool Cyclotomic::is_rational() const { return d_->e == 1; }

bool Cyclotomic::is_integral() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

mpq_class Cyclotomic::rational_value() const {
    if (!is_rational()) throw InvalidArgument("rational_value: " + serialize() + " is irrational");
    return c_[0];
}

Cyclotomic Cyclotomic::lifted(u64 E) const {
    if (E == d_->e) return *this;
    if (E % d_->e) throw std::logic_error("lift to a non-multiple conductor");
    const CycloData* D = cyclo_data(E);
    u64 step = E / d_->e;
    std::vector<mpq_class> a(E, mpq_class(0));
    for (std::size_t j = 0; j < c_.size(); ++j) a[j * step] = c_[j];
    reduce_mod_phi(a, *D);
    Cyclotomic r;
    r.d_ = D;
    r.c_ = std::move(a);
    return r;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    u64 E = std::lcm(a.conductor(), b.conductor());
    Cyclotomic x = a.lifted(E), y = b.lifted(E);
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return Cyclotomic(x.d_, std::move(x.c_));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    u64 E = std::lcm(a.conductor(), b.conductor());
    const CycloData* D = cyclo_data(E);
    u64 sa = E / a.conductor(), sb = E / b.conductor();
    if (fits_small(a.c_) && fits_small(b.c_)) {
        std::vector<i128> acc(E, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            long x = a.c_[i].get_num().get_si();
            if (!x) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                long y = b.c_[j].get_num().get_si();
                if (y) acc[(i * sa + j * sb) % E] += static_cast<i128>(x) * y;
            }
        }
        reduce_mod_phi(acc, *D);
        const CycloData* d = minimize(D, acc);
        Cyclotomic r;
        r.d_ = d;
        r.c_.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = to_mpq(acc[i]);
        return r;
    }
    std::vector<mpq_class> acc(E, mpq_class(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (sgn(b.c_[j]) != 0) acc[(i * sa + j * sb) % E] += a.c_[i] * b.c_[j];
    }
    reduce_mod_phi(acc, *D);
    return Cyclotomic(D, std::move(acc));
}

Cyclotomic Cyclotomic::scaled(const mpq_class& r) const {
    if (sgn(r) == 0) return Cyclotomic();
    Cyclotomic x = *this;
    for (auto& c : x.c_) {
        c *= r;
        c.canonicalize();
    }
    return x;
}

Cyclotomic Cyclotomic::galois(i64 k) const {
    const u64 e = d_->e;
    if (e == 1) return *this;
    u64 kk = mod_exp(k, e);
    if (std::gcd(kk, e) != 1) throw InvalidArgument("galois: exponent not coprime to conductor");
    std::vector<mpq_class> a(e, mpq_class(0));
    for (std::size_t j = 0; j < c_.size(); ++j) a[(j * kk) % e] = c_[j];
    reduce_mod_phi(a, *d_);
    Cyclotomic r;
    r.d_ = d_;
    r.c_ = std::move(a);
    return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

std::string Cyclotomic::serialize() const {
    std::ostringstream os;
    os << "cyc(" << d_->e << ";";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : " ") << c_[i].get_str();
    os << ")";
    return os.str();
}

std::string Cyclotomic::approx() const {
    long double re = 0, im = 0;
    const long double pi = std::acos(-1.0L);
    for (std::size_t j = 0; j < c_.size(); ++j) {
        long double v = c_[j].get_d();
        re += v * std::cos(2 * pi * j / d_->e);
        im += v * std::sin(2 * pi * j / d_->e);
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << static_cast<double>(re);
    if (std::fabs(static_cast<double>(im)) > 1e-9) os << (im < 0 ? " - " : " + ") << std::fabs(static_cast<double>(im)) << "i";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.serialize(); }

Cyclotomic galois_apply(const Cyclotomic& x, const GaloisMap& g) {
    if (g.e == 0 || std::gcd(mod_exp(g.k, g.e), g.e) != 1)
        throw InvalidArgument("galois_apply: exponent not coprime to conductor");
    if (g.e % x.conductor() != 0)
        throw InvalidArgument("galois_apply: value conductor does not divide the map's conductor");
    return x.galois(g.k);
}

u64 sigma_exponent(u64 e) {
    if (e == 0) throw InvalidArgument("sigma_exponent: e must be positive");
    u64 t = two_part(e), m = e / t;
    if (m == 1) return 1;
    // k = 1 + t * s with 1 + t s = 2 (mod m).
    u64 s = invmod(static_cast<i64>(t % m), static_cast<i64>(m));
    u64 k = (1 + t * (s % m)) % e;
    return k;
}

bool quadratic_field_member(const Cyclotomic& x, int eta, u64 p) {
    if (!is_prime(p) || p == 2) throw InvalidArgument("quadratic_field_member: p must be an odd prime");
    if (((static_cast<i64>(p) - eta) % 4 + 4) % 4 != 0)
        throw InvalidArgument("quadratic_field_member: eta must be congruent to p mod 4");
    if (x.is_rational()) return true;
    u64 E = std::lcm(x.conductor(), p);
    // Generators of {k in (Z/E)^* : (k/p) = 1}, grown greedily.
    std::set<u64> sub{1};
    for (u64 k = 2; k < E; ++k) {
        if (std::gcd(k, E) != 1 || legendre(static_cast<i64>(k), p) != 1 || sub.count(k)) continue;
        if (x.galois(static_cast<i64>(k)) != x) return false;
        std::vector<u64> cur(sub.begin(), sub.end());
        u64 pk = k;
        while (pk != 1) {
            for (u64 s : cur) sub.insert(s * pk % E);
            pk = pk * k % E;
        }
    }
    return true;
}

Cyclotomic quadratic_gauss_sum(u64 p) {
    std::vector<i64> m(p, 0);
    for (u64 a = 1; a < p; ++a) m[a] = legendre(static_cast<i64>(a), p);
    return Cyclotomic::from_exponents(p, m);
}

CycloAccumulator::CycloAccumulator(u64 E) : E_(E), acc_(E, 0) {}

void CycloAccumulator::sparse(const Cyclotomic& a, bool conj, std::vector<std::pair<u64, i64>>& out) const {
    out.clear();
    u64 e = a.conductor();
    if (E_ % e) throw InvalidArgument("accumulator: conductor does not divide E");
    u64 step = E_ / e;
    for (std::size_t j = 0; j < a.c_.size(); ++j) {
        const mpq_class& c = a.c_[j];
        if (sgn(c) == 0) continue;
        if (c.get_den() != 1 || !c.get_num().fits_slong_p())
            throw InvalidArgument("accumulator: coefficient is not a small integer");
        u64 ex = (j * step) % E_;
        if (conj) ex = (E_ - ex) % E_;
        out.emplace_back(ex, c.get_num().get_si());
    }
}

void CycloAccumulator::add(const Cyclotomic& a, i64 s) {
    std::vector<std::pair<u64, i64>> sa;
    sparse(a, false, sa);
    for (auto [x, c] : sa) acc_[x] += static_cast<i128>(c) * s;
}

void CycloAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b, i64 s, bool conj_b) {
    thread_local std::vector<std::pair<u64, i64>> sa, sb;
    sparse(a, false, sa);
    sparse(b, conj_b, sb);
    for (auto [x, c] : sa)
        for (auto [y, d] : sb) acc_[(x + y) % E_] += static_cast<i128>(c) * d * s;
}

Cyclotomic CycloAccumulator::value() const {
    const CycloData* D = cyclo_data(E_);
    std::vector<i128> a(acc_);
    reduce_mod_phi(a, *D);
    const CycloData* d = minimize(D, a);
    Cyclotomic r;
    r.d_ = d;
    r.c_.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = to_mpq(a[i]);
    return r;
}

}  // namespace selfnorm

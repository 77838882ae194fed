#include "selfnorm/finite_field.hpp"

#include <map>
#include <mutex>

namespace selfnorm {

namespace {

using Poly = std::vector<u64>;  // low to high, coefficients in [0, p)

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, u64 p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    u64 lead_inv = invmod(static_cast<i64>(f.back()), static_cast<i64>(p));
    while (a.size() > df) {
        u64 c = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly b, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    b = poly_mod(std::move(b), f, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, b, f, p);
        b = poly_mulmod(b, b, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<u64>& low, u64 p) {
    const unsigned k = static_cast<unsigned>(low.size());
    Poly f(low);
    f.push_back(1);
    if (k == 1) return true;
    // Ben-Or: f is irreducible iff gcd(x^(p^i) - x, f) = 1 for 1 <= i <= k/2.
    Poly h{0, 1};
    for (unsigned i = 1; i <= k / 2; ++i) {
        h = poly_powmod(h, p, f, p);
        Poly d = h;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        Poly g = poly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(u64 p, unsigned k) : p_(p), k_(k), q_(ipow(p, k)) {
    // Least irreducible monic modulus in the order of its coefficient code.
    std::vector<u64> c(k, 0);
    for (u64 code = 0;; ++code) {
        u64 t = code;
        for (unsigned i = 0; i < k; ++i) {
            c[i] = t % p;
            t /= p;
        }
        if (k > 1 && c[0] == 0) continue;
        if (is_irreducible_mod_p(c, p)) break;
    }
    modulus_ = c;

    auto primes = prime_divisors(q_ - 1);
    auto is_generator = [&](Elem a) {
        if (pow_poly(a, q_ - 1) != 1) return false;
        for (u64 r : primes)
            if (pow_poly(a, (q_ - 1) / r) == 1) return false;
        return true;
    };
    if (q_ == 2) {
        gen_ = 1;
    } else {
        for (Elem a = 2; a < q_; ++a) {
            if (is_generator(a)) {
                gen_ = a;
                break;
            }
        }
    }

    if (q_ <= (u64{1} << 16)) {
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        Elem x = 1;
        for (u64 i = 0; i < q_ - 1; ++i) {
            exp_[i] = x;
            log_[x] = static_cast<std::uint32_t>(i);
            x = mul_poly(x, gen_);
        }
        for (u64 i = q_ - 1; i < 2 * (q_ - 1); ++i) exp_[i] = exp_[i - (q_ - 1)];
        neg_.resize(q_);
        for (Elem a = 0; a < q_; ++a) {
            auto d = digits(a);
            for (auto& x : d) x = (p_ - x) % p_;
            neg_[a] = from_digits(d);
        }
        if (p_ != 2 && q_ <= 1024) {
            add_.resize(q_ * q_);
            for (Elem a = 0; a < q_; ++a) {
                auto da = digits(a);
                for (Elem b = 0; b < q_; ++b) {
                    auto db = digits(b);
                    for (unsigned i = 0; i < k_; ++i) db[i] = (db[i] + da[i]) % p_;
                    add_[a * q_ + b] = static_cast<std::uint16_t>(from_digits(db));
                }
            }
        }
    }
}

FieldRef FiniteField::get(u64 p, unsigned k, u64 budget) {
    if (!is_prime(p)) throw InvalidArgument("ff_create: " + std::to_string(p) + " is not prime");
    if (k == 0) throw InvalidArgument("ff_create: degree must be positive");
    long double size = 1;
    for (unsigned i = 0; i < k; ++i) size *= static_cast<long double>(p);
    if (size > static_cast<long double>(budget) || size > static_cast<long double>(kDefaultBudget))
        throw BudgetExceeded("ff_create: field of size " + std::to_string(p) + "^" + std::to_string(k) +
                             " exceeds budget");
    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, FieldRef> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot = FieldRef(new FiniteField(p, k));
    return slot;
}

FieldRef FiniteField::of_order(u64 q) {
    auto [p, k] = prime_power(q);
    return get(p, k);
}

std::vector<u64> FiniteField::digits(Elem a) const {
    std::vector<u64> d(k_);
    u64 t = a;
    for (unsigned i = 0; i < k_; ++i) {
        d[i] = t % p_;
        t /= p_;
    }
    return d;
}

Elem FiniteField::from_digits(const std::vector<u64>& d) const {
    u64 code = 0;
    for (unsigned i = k_; i-- > 0;) code = code * p_ + (i < d.size() ? d[i] % p_ : 0);
    return static_cast<Elem>(code);
}

Elem FiniteField::mul_poly(Elem a, Elem b) const {
    Poly f(modulus_);
    f.push_back(1);
    Poly pa = digits(a), pb = digits(b);
    Poly r = poly_mulmod(pa, pb, f, p_);
    return from_digits(r);
}

Elem FiniteField::pow_poly(Elem a, u64 e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul_poly(r, a);
        a = mul_poly(a, a);
        e >>= 1;
    }
    return r;
}

Elem FiniteField::add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
    if (k_ == 1) return static_cast<Elem>((a + static_cast<u64>(b)) % p_);
    Elem r = 0;
    u64 place = 1;
    while (a || b) {
        u64 s = (a % p_ + b % p_) % p_;
        r += static_cast<Elem>(s * place);
        place *= p_;
        a = static_cast<Elem>(a / p_);
        b = static_cast<Elem>(b / p_);
    }
    return r;
}

Elem FiniteField::neg(Elem a) const {
    if (p_ == 2) return a;
    if (!neg_.empty()) return neg_[a];
    auto d = digits(a);
    for (auto& x : d) x = (p_ - x) % p_;
    return from_digits(d);
}

Elem FiniteField::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw InvalidArgument("ff_arith: inversion of zero");
    if (!exp_.empty()) return a == 1 ? 1 : exp_[(q_ - 1) - log_[a]];
    return pow_poly(a, q_ - 2);
}

Elem FiniteField::pow(Elem a, i64 e) const {
    if (a == 0) {
        if (e < 0) throw InvalidArgument("ff pow: zero to a negative power");
        return e == 0 ? 1 : 0;
    }
    const i64 m = static_cast<i64>(q_ - 1);
    u64 ee = static_cast<u64>(((e % m) + m) % m);
    if (!exp_.empty()) return exp_[mulmod(log_[a], ee, q_ - 1)];
    return pow_poly(a, ee);
}

Elem FiniteField::from_int(i64 n) const {
    i64 p = static_cast<i64>(p_);
    return static_cast<Elem>(((n % p) + p) % p);
}

Elem FiniteField::exp(i64 i) const {
    const i64 m = static_cast<i64>(q_ - 1);
    u64 ii = static_cast<u64>(((i % m) + m) % m);
    if (!exp_.empty()) return exp_[ii];
    return pow_poly(gen_, ii);
}

u64 FiniteField::log(Elem a) const {
    if (a == 0) throw InvalidArgument("log of zero");
    if (!exp_.empty()) return log_[a];
    // Baby-step giant-step fallback for large fields.
    u64 m = 1;
    while (m * m < q_ - 1) ++m;
    std::map<Elem, u64> baby;
    Elem x = 1;
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(x, j);
        x = mul_poly(x, gen_);
    }
    Elem step = inv(pow_poly(gen_, m));
    Elem y = a;
    for (u64 i = 0; i <= m; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return (i * m + it->second) % (q_ - 1);
        y = mul_poly(y, step);
    }
    throw std::logic_error("log: generator does not reach element");
}

u64 FiniteField::order(Elem a) const {
    if (a == 0) throw InvalidArgument("order of zero");
    u64 ord = q_ - 1;
    for (auto [r, e] : factorize(q_ - 1)) {
        for (unsigned i = 0; i < e && pow(a, static_cast<i64>(ord / r)) == 1; ++i) ord /= r;
    }
    return ord;
}

Elem FiniteField::frobenius(Elem a, unsigned m) const {
    m %= k_;
    if (a == 0 || m == 0) return a;
    u64 e = ipow(p_, m);
    if (!exp_.empty()) return exp_[mulmod(log_[a], e, q_ - 1)];
    return pow_poly(a, e);
}

Elem FiniteField::root_of_unity(u64 d) const {
    if (d == 0 || (q_ - 1) % d != 0)
        throw InvalidArgument("root_of_unity: " + std::to_string(d) + " does not divide " + std::to_string(q_ - 1));
    return exp(static_cast<i64>((q_ - 1) / d));
}

Elem FiniteField::trace_to_prime(Elem a) const {
    Elem s = 0, x = a;
    for (unsigned i = 0; i < k_; ++i) {
        s = add(s, x);
        x = frobenius(x, 1);
    }
    return s;
}

Elem FiniteField::conj(Elem a) const {
    if (k_ % 2) throw InvalidArgument("conj: field has odd degree");
    return frobenius(a, k_ / 2);
}

std::vector<Elem> FiniteField::embedding_into(const FiniteField& big) const {
    if (big.p() != p_ || big.k() % k_ != 0) throw InvalidArgument("embedding: not a subfield");
    // Find the least-code root of our modulus in big.
    auto eval = [&](Elem x) {
        Elem acc = 1;  // monic leading term
        for (unsigned i = k_; i-- > 0;) acc = big.add(big.mul(acc, x), static_cast<Elem>(modulus_[i]));
        return acc;
    };
    Elem root = 0;
    bool found = false;
    for (Elem x = 0; x < big.q(); ++x) {
        if (eval(x) == 0) {
            root = x;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("embedding: modulus has no root");
    std::vector<Elem> powers(k_);
    powers[0] = 1;
    for (unsigned i = 1; i < k_; ++i) powers[i] = big.mul(powers[i - 1], root);
    std::vector<Elem> img(q_);
    for (Elem a = 0; a < q_; ++a) {
        auto d = digits(a);
        Elem s = 0;
        for (unsigned i = 0; i < k_; ++i) s = big.add(s, big.mul(static_cast<Elem>(d[i]), powers[i]));
        img[a] = s;
    }
    return img;
}

FieldElement ff_arith(const FieldElement& x, const FieldElement& y, FieldOp op) {
    if (!x.field) throw InvalidArgument("ff_arith: element without field");
    const FiniteField& F = *x.field;
    switch (op) {
        case FieldOp::Neg:
            return {x.field, F.neg(x.v)};
        case FieldOp::Inv:
            return {x.field, F.inv(x.v)};
        default:
            break;
    }
    if (x.field != y.field) throw InvalidArgument("ff_arith: mixed fields");
    if (op == FieldOp::Add) return {x.field, F.add(x.v, y.v)};
    return {x.field, F.mul(x.v, y.v)};
}

FieldElement frobenius(const FieldElement& x, unsigned m) { return {x.field, x.field->frobenius(x.v, m)}; }

FieldElement root_of_unity(const FieldRef& F, u64 d) { return {F, F->root_of_unity(d)}; }

}  // namespace selfnorm

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "selfnorm/arith.hpp"

namespace selfnorm {

struct CycloData;

// An exact element of a cyclotomic field. Values are kept in canonical form:
// the smallest conductor e that contains the value, and coefficients with
// respect to the power basis 1, z, ..., z^(phi(e)-1) of Q(z), z = exp(2 pi i/e),
// modulo the e-th cyclotomic polynomial. Equal values have equal representations.
class Cyclotomic {
public:
    Cyclotomic();  // zero
    Cyclotomic(long n);
    explicit Cyclotomic(const mpq_class& r);

    static Cyclotomic root_of_unity(u64 e, i64 k);  // z_e^k
    // sum_j mult[j] z_e^j with j ranging over [0, mult.size()); mult.size() must be e.
    static Cyclotomic from_exponents(u64 e, const std::vector<i64>& mult);
    static Cyclotomic from_exponents(u64 e, const std::vector<mpq_class>& mult);

    u64 conductor() const;
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_integral() const;  // all power-basis coefficients are integers
    mpq_class rational_value() const;  // throws unless rational

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    Cyclotomic scaled(const mpq_class& r) const;

    Cyclotomic conj() const { return galois(-1); }
    // The automorphism z_E -> z_E^k restricted to this value; k must be a unit
    // modulo the conductor of the value.
    Cyclotomic galois(i64 k) const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // `cyc(e; c_0, c_1, ...)`
    std::string serialize() const;
    // Display-only decimal rendering of real and imaginary parts.
    std::string approx() const;

private:
    Cyclotomic(const CycloData* d, std::vector<mpq_class> c);
    Cyclotomic lifted(u64 E) const;
    void normalize();

    const CycloData* d_;
    std::vector<mpq_class> c_;

    friend class CycloAccumulator;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

// Galois automorphism of Q(z_e) given by z -> z^k.
struct GaloisMap {
    u64 e = 1;
    i64 k = 1;
};

Cyclotomic galois_apply(const Cyclotomic& x, const GaloisMap& g);

// k with k = 1 mod the 2-part of e and k = 2 mod the odd part of e.
u64 sigma_exponent(u64 e);

inline GaloisMap sigma_map(u64 e) { return {e, static_cast<i64>(sigma_exponent(e))}; }

// True iff x is fixed by every automorphism that fixes sqrt(eta p).
bool quadratic_field_member(const Cyclotomic& x, int eta, u64 p);

// sum_{a=1}^{p-1} (a/p) z_p^a, which equals sqrt(p*) with p* = (-1/p) p.
Cyclotomic quadratic_gauss_sum(u64 p);

// Integer-coefficient accumulator in exponent space of a fixed conductor E.
// Used for long sums of products of algebraic integers (inner products,
// orthogonality) without creating intermediate canonical values.
class CycloAccumulator {
public:
    explicit CycloAccumulator(u64 E);
    u64 conductor() const { return E_; }
    // Adds s * a; a must be integral with conductor dividing E.
    void add(const Cyclotomic& a, i64 s = 1);
    // Adds s * a * b; with conj_b, b is replaced by its complex conjugate.
    void add_product(const Cyclotomic& a, const Cyclotomic& b, i64 s = 1, bool conj_b = false);
    void add_root(i64 j, i64 s) { acc_[static_cast<u64>(((j % static_cast<i64>(E_)) + static_cast<i64>(E_)) % static_cast<i64>(E_))] += s; }
    Cyclotomic value() const;

private:
    void sparse(const Cyclotomic& a, bool conj, std::vector<std::pair<u64, i64>>& out) const;
    u64 E_;
    std::vector<__int128> acc_;
};

}  // namespace selfnorm

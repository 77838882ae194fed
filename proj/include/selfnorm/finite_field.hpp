#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "selfnorm/arith.hpp"

namespace selfnorm {

// An element of GF(p^k) is encoded by its additive coordinates: the code
// sum c_i p^i stands for sum c_i x^i modulo the field's defining polynomial.
// 0 is zero and 1 is one in every field.
using Elem = std::uint32_t;

class FiniteField;
using FieldRef = std::shared_ptr<const FiniteField>;

class FiniteField {
public:
    static constexpr u64 kDefaultBudget = u64{1} << 31;

    // Fields are interned: equal (p, k) yield the same object.
    static FieldRef get(u64 p, unsigned k, u64 budget = kDefaultBudget);
    static FieldRef of_order(u64 q);

    u64 p() const { return p_; }
    unsigned k() const { return k_; }
    u64 q() const { return q_; }
    const std::vector<u64>& modulus() const { return modulus_; }  // c_0..c_{k-1}, monic
    Elem generator() const { return gen_; }
    bool has_tables() const { return !exp_.empty(); }
    std::string name() const { return "GF(" + std::to_string(q_) + ")"; }

    Elem add(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, i64 e) const;
    Elem from_int(i64 n) const;  // image of an integer in the prime field

    // g^i for the field generator g (i taken modulo q-1).
    Elem exp(i64 i) const;
    // Discrete log base the generator; a must be nonzero.
    u64 log(Elem a) const;
    u64 order(Elem a) const;

    Elem frobenius(Elem a, unsigned m) const;  // a^(p^m)
    Elem root_of_unity(u64 d) const;           // g^((q-1)/d)
    Elem trace_to_prime(Elem a) const;         // absolute trace, lands in GF(p) = {0..p-1}
    Elem conj(Elem a) const;                   // a^(sqrt q), only for even k

    // Image of every element of this field inside `big` (which must contain it):
    // x maps to the least-code root of this field's modulus in `big`.
    std::vector<Elem> embedding_into(const FiniteField& big) const;

    std::vector<u64> digits(Elem a) const;
    Elem from_digits(const std::vector<u64>& d) const;

private:
    FiniteField(u64 p, unsigned k);
    Elem mul_poly(Elem a, Elem b) const;
    Elem pow_poly(Elem a, u64 e) const;

    u64 p_;
    unsigned k_;
    u64 q_;
    std::vector<u64> modulus_;
    Elem gen_ = 0;
    std::vector<Elem> exp_;        // length 2(q-1)
    std::vector<std::uint32_t> log_;
    std::vector<Elem> neg_;
    std::vector<std::uint16_t> add_;  // full table for small q
};

// Value-semantics element bound to its field.
struct FieldElement {
    FieldRef field;
    Elem v = 0;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field == b.field && a.v == b.v;
    }
};

enum class FieldOp { Add, Mul, Inv, Neg };

FieldElement ff_arith(const FieldElement& x, const FieldElement& y, FieldOp op);
FieldElement frobenius(const FieldElement& x, unsigned m);
FieldElement root_of_unity(const FieldRef& F, u64 d);

// True if the polynomial x^k + sum c_i x^i over GF(p) is irreducible.
bool is_irreducible_mod_p(const std::vector<u64>& monic_low_coeffs, u64 p);

}  // namespace selfnorm

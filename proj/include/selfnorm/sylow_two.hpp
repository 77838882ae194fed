#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "selfnorm/group_data.hpp"

namespace selfnorm {

// n = 2^r[0] + 2^r[1] + ... with r strictly decreasing.
struct TwoAdicExpansion {
    std::vector<int> r;
    int t() const { return static_cast<int>(r.size()); }
};

TwoAdicExpansion two_adic(u64 n);

// Sylow 2-subgroup of GL_n^eps(q), q odd, assembled block-diagonally from
// iterated wreath products S_r (a Sylow 2-subgroup of GL_{2^r}^eps(q)).
struct SylowDecomposition {
    int n = 0;
    u64 q = 0;
    int eps = 1;
    TwoAdicExpansion parts;
    std::vector<Matrix> generators;
    mpz_class order;                       // |P~|, checked against the order formula
    mpz_class predicted_normalizer_order;  // |P~| ((q - eps)_{2'})^t
    std::vector<Matrix> z_generators;      // lambda I on block j, identity elsewhere
    Elem lambda = 1;                       // generator of the odd part of GL_1^eps(q)
    std::string order_method;              // "closure" or "wreath-formula"
};

// Generators of S_r^eps(q) as 2^r x 2^r matrices over GF(q) or GF(q^2).
// S_0 is cyclic of order (q - eps)_2, S_1 is found by the generic Sylow
// algorithm inside GL_2^eps(q), and S_{r+1} = S_r wr C_2.
std::vector<Matrix> s_r_generators(int r, u64 q, int eps);
// |S_r^eps(q)| from the construction (|S_1| by closure, then 2|S_r|^2).
mpz_class s_r_order(int r, u64 q, int eps);

// The order is re-derived by closing the generators when it is at most closure_budget.
SylowDecomposition build_sylow(int n, u64 q, int eps, u64 closure_budget = 16384);
mpz_class predicted_normalizer_order(int n, u64 q, int eps);

// The 2-part of [GL_2m^eps(q) : GL_m^eps(q)^2] from the order formula, and
// whether it equals 2^t with t the number of 2-adic parts of m.
mpz_class index_two_part(int m, u64 q, int eps);
bool index_two_part_check(int m, u64 q, int eps);

// |S_{r+1}| = 2 |S_r|^2 for the constructed groups. Orders of S_0, S_1 and
// S_2 come from closures of their generators; S_3 and beyond use the 2-part
// of |GL_{2^(r+1)}^eps(q)| (their Sylow order) since they are too large to close.
struct WreathOrderCheck {
    int r = 0;
    mpz_class s_r, s_r1;
    bool holds = false;
    std::string method;
};
WreathOrderCheck wreath_order_check(int r, u64 q, int eps);

struct Sn2sVerdict {
    bool holds = false;
    std::string clause;  // "i", "ii", "iii" or "" when false
};

// Self-normalising Sylow 2-subgroup criterion for simple PSL_n^eps(q).
// Throws InvalidArgument for parameters where the group is not simple.
Sn2sVerdict sn2s_simple(int n, u64 q, int eps);
bool psl_is_simple(int n, u64 q, int eps);

// A 2-group of outer automorphisms described by its generators.
struct QDescription {
    bool graph = false;                 // transpose-inverse (eps = +1)
    std::vector<unsigned> field_powers; // x -> x^(p^m), order a/m with q_bar = p^a
    std::vector<Matrix> diagonal;       // diagonal 2-elements (do not enter the criterion)

    // "trivial", or '|'-separated items "graph", "field:m=K", "diag:<matrix literal>".
    static QDescription parse(const std::string& s);
    std::string str() const;
    bool trivial() const { return !graph && field_powers.empty() && diagonal.empty(); }
};

// Checks the declared field powers against q_bar = p^a (a/m a power of 2).
void validate_q(const QDescription& Q, u64 q, int eps);
// gcd of a and the declared field powers: Q's field part is <F_p^m0>; m0 = a when there is none.
unsigned field_part_m0(const QDescription& Q, u64 q, int eps);

struct Sn2sQVerdict {
    bool holds = false;
    std::vector<int> conditions;  // every condition (1)-(5) that holds
    std::string detail;
};

Sn2sQVerdict sn2s_with_Q(int n, u64 q, int eps, const QDescription& Q);

// Brute-force Carter-Fong verification inside the enumerated GL_n^eps(q).
struct CarterFongCheck {
    std::string spec;
    mpz_class sylow_order, formula_two_part;
    u64 normalizer_order = 0;
    mpz_class predicted;
    bool factorization_ok = false;  // every normaliser element is x z with x in P~
    bool cf1_ok = false;            // N(P~ cap SL) = N(P~), reported separately from ok()
    bool ok() const;
};
CarterFongCheck carter_fong_brute(int n, u64 q, int eps, u64 budget = kEnumerationBudget);

}  // namespace selfnorm

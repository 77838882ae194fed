#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "selfnorm/matrix.hpp"

namespace selfnorm {

enum class Kind { GL, SL, GU, SU, PGL, PSL, PGU, PSU };

std::string kind_name(Kind k);

// One of the classical groups GL_n^eps(q), SL_n^eps(q) and their quotients by
// the centre. Unitary groups are realised inside GL_n(q^2) with the Hermitian
// form J = I, i.e. conj(M)^T M = I where conj raises entries to the q-th power.
struct GroupSpec {
    Kind kind = Kind::GL;
    int n = 1;
    u64 q = 2;
    int eps = 1;

    static GroupSpec make(Kind kind, int n, u64 q);
    // `SL(2,9,+1)`; the sign must match the kind's family.
    static GroupSpec parse(const std::string& s);
    std::string str() const;

    u64 p() const;
    unsigned a() const;  // q = p^a
    bool unitary() const { return eps == -1; }
    bool projective() const { return kind == Kind::PGL || kind == Kind::PSL || kind == Kind::PGU || kind == Kind::PSU; }
    bool special() const { return kind == Kind::SL || kind == Kind::SU || kind == Kind::PSL || kind == Kind::PSU; }
    Kind base_kind() const;      // PSL -> SL etc.
    GroupSpec base() const;      // the matrix group whose quotient this is
    GroupSpec full() const;      // GL_n^eps(q)
    FieldRef field() const;      // GF(q) or GF(q^2)

    friend bool operator==(const GroupSpec& x, const GroupSpec& y) {
        return x.kind == y.kind && x.n == y.n && x.q == y.q;
    }
};

// |GL_n^eps(q)| = q^(n(n-1)/2) prod_{i=1}^n (q^i - eps^i).
mpz_class gl_order(int n, u64 q, int eps);
mpz_class group_order(const GroupSpec& s);
u64 group_order_u64(const GroupSpec& s);
// 2-part of |GL_n^eps(q)| computed factor by factor.
mpz_class gl_order_two_part(int n, u64 q, int eps);

// Scalars of the centre of the base matrix group (all of Z(GL) for GL/GU).
std::vector<Elem> center_scalars(const GroupSpec& s);

// Entrywise q-th power (the field involution of GF(q^2)); unitary specs only.
Matrix bar(const GroupSpec& s, const Matrix& M);

// Membership of a matrix in the base group; for projective kinds the matrix
// must additionally be the canonical representative of its coset.
bool contains(const GroupSpec& s, const Matrix& M);
bool in_base_group(const GroupSpec& s, const Matrix& M);

// Lexicographically least scalar multiple by the centre (projective kinds);
// identity map otherwise. For PGL this makes the first nonzero entry 1.
Matrix canonical_rep(const GroupSpec& s, const Matrix& M);

// Antidiagonal permutation matrix with unit entries.
Matrix longest_element(const FieldRef& F, int n);

struct AutomorphismDesc {
    unsigned field_power = 0;  // x -> x^(p^m) entrywise
    bool graph = false;        // x -> n0 x^(-T) n0^-1
    std::optional<Matrix> diagonal;  // conjugation by a GL element

    std::string str() const;
    bool is_identity() const { return field_power == 0 && !graph && !diagonal; }
};

// diagonal o graph o field, then re-canonicalised for projective kinds.
Matrix apply_automorphism(const GroupSpec& s, const Matrix& M, const AutomorphismDesc& a);

struct ConjugacyResult {
    bool conjugate = false;
    std::optional<Matrix> conjugator;  // g with g A g^-1 = B (up to the centre for projective kinds)
    std::string method;
};

// Decides conjugacy in the group of `s`. GL is settled by rational canonical
// forms; the other kinds search the solution space of X A = B X for a member
// of the group (budget bounds the number of candidates examined).
ConjugacyResult are_conjugate(const GroupSpec& s, const Matrix& A, const Matrix& B, u64 budget = 2000000);

}  // namespace selfnorm

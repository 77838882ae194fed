#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "selfnorm/group_spec.hpp"
#include "selfnorm/sylow_two.hpp"

namespace selfnorm {

// A semisimple element of GL_n^eps(q) together with the data it was built from.
struct WitnessElement {
    GroupSpec ambient;              // GL(n,q,+1) or GU(n,q,-1)
    Matrix s;
    std::vector<int> blocks;        // block sizes of the scalar blocks
    std::vector<Elem> lambdas;      // scalar on each block
    u64 root_order = 0;             // order of lambda_2 (odd part of q - eps or p^m - 1)
    u64 b = 0;                      // lambda_1 = lambda_2^b
    unsigned subfield = 0;          // m when the scalars were taken in GF(p^m), 0 for the full field
    bool experimental = false;
    std::string construction;
};

struct WitnessOutcome {
    bool built = false;
    std::optional<WitnessElement> z;
    std::vector<int> refused_conditions;  // conditions of the criterion with outer automorphisms that hold
    std::string reason;
};

// The block-scalar element z = diag(lambda_1 I, lambda_2 I, I, ...) with blocks
// 2^r_j in decreasing order, lambda_2 a primitive root of order N and
// lambda_1 = lambda_2^b, b = -2^(r_2 - r_1) mod N. N is the odd part of q - eps,
// or of p^m - 1 when subfield_m > 0. Refuses when n is a power of 2, N = 1 or
// z is central.
WitnessOutcome build_z_mode(int n, u64 q, int eps, unsigned subfield_m = 0);

// Chooses the mode from Q (its field part when eps = +1 and Q has field
// automorphisms) and refuses, citing every holding condition, whenever the
// criterion with outer automorphisms holds.
WitnessOutcome build_z(int n, u64 q, int eps, const QDescription& Q);

struct SCheck {
    bool holds = false;
    std::string evidence;
    std::vector<Matrix> conjugators;  // replayable: g s g^-1 = image, in the order of `images`
    std::vector<Matrix> images;
};

struct SReport {
    std::string ambient;
    SCheck s1, s2, s3, s4;
    bool all() const { return s1.holds && s2.holds && s3.holds && s4.holds; }
};

// Semisimple conjugacy in GL_n^eps(q): equality of characteristic polynomials
// over GF(q_bar). Both matrices must be semisimple (order prime to p).
bool semisimple_conjugate(const Matrix& A, const Matrix& B);
bool is_semisimple(const Matrix& A);

// Centraliser order of a semisimple s in GL_n^eps(q) from its eigenvalue
// orbits: each Frobenius orbit of size d with multiplicity m contributes
// GL_m(q^d), or for eps = -1 GU_m(q^d) when d is odd and GL_m(q^d) when d is even.
mpz_class semisimple_centralizer_order(const GroupSpec& full, const Matrix& s);

// The four conditions on s in the commutator subgroup of GL_n^eps(q):
// S1 odd order and odd p'-part of the centraliser index, S2 s not conjugate
// to s^2, S3 s not conjugate to s t for central t != 1, S4 s conjugate to its
// image under each generator of Q.
SReport check_S_conditions(const GroupSpec& full, const Matrix& s, const QDescription& Q, u64 budget = 2000000);

// p = 2: s0 = diag(zeta0, 1, ..., 1, zeta0^-1) with zeta0 of order 2^m - 1
// (m > 1) or 5 (m = 1), where m is the odd part of a for q = 2^a. For
// eps = -1 s0 is built for the antidiagonal Hermitian form and moved to the
// form J = I. q = 4 needs allow_experimental and then searches GL_2^eps(4)
// for a rational element with the eigenvalues of s0.
WitnessElement p2_alpha0_witness(int n, u64 q, int eps, unsigned m, bool allow_experimental = false);

// C with conj(C)^T C = antidiag(1, ..., 1) over GF(q^2).
Matrix antidiagonal_form_change(const FieldRef& F2, u64 q, int n);

struct PreimageResult {
    bool found = false;
    std::optional<Matrix> preimage;
    u64 image_order = 0;                           // order of s_bar in PGL_n^eps(q)
    std::vector<std::pair<Elem, u64>> transcript;  // (central scalar, order of s' z)
};

// Scans s' Z(GL_n^eps(q)) for an element of 2-power order, choosing the least
// order (then the first scalar code). s' is any representative matrix of s_bar;
// s_bar must have odd order and centralise the image of the constructed Sylow
// 2-subgroup.
PreimageResult two_power_preimage(const GroupSpec& spec, const Matrix& s_prime);

struct TorusReport {
    bool degenerate = false;
    u64 torus_order = 0;
    std::vector<std::pair<int, int>> trivial_roots;  // (i, j), i < j, 1-based
};

// The maximal torus of diagonal matrices of SL_n with the split Frobenius
// (eps = +1) or F(t)_i = t_(n+1-i)^(-q) (eps = -1). Enumerates T0^F and tests
// every root e_i - e_j.
TorusReport torus_degenerate(int n, u64 q, int eps, u64 budget = 2000000);

struct TorusIdentityReport {
    bool holds = false;
    u64 checks = 0;
    std::vector<std::string> failures;
};

// t = diag(2a, a, a^-1, 2^-1 a^-1) conjugates u to u^2 for the four unipotent
// class representatives u of the Levi diag(GL_2, GL_2) cap SL_4, and
// t^-1 F'(t) lies in the identity component of C_T0(u), for every a in GF(q)^*.
// F' is F_q, or F_q followed by conjugation with the permutation (1,3)(2,4).
TorusIdentityReport sl4_torus_identity(u64 q, bool twisted);

struct SquareConjugacyEntry {
    std::string partition;
    Elem twist = 1;  // u = D u_partition D^-1 with D = diag(twist, 1, 1, 1)
    Matrix u;
    bool conjugate = false;
    std::optional<Matrix> conjugator;  // g in SL_4(q) with g u g^-1 = u^2
    u64 searched = 0;
};

struct SquareConjugacyReport {
    bool holds = false;
    std::vector<SquareConjugacyEntry> entries;
};

// Every non-regular unipotent u of SL_4(q) is SL_4(q)-conjugate to u^2:
// a GL conjugator g0 from rational canonical forms, then a search of
// C_GL(u^2) g0 for determinant 1.
SquareConjugacyReport sl4_nonregular_square_conjugacy(u64 q, u64 budget = 2000000);

}  // namespace selfnorm

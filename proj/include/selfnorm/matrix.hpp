#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfnorm/finite_field.hpp"

namespace selfnorm {

// Square matrix over a finite field, row-major.
struct Matrix {
    FieldRef F;
    int n = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(FieldRef f, int n_) : F(std::move(f)), n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}

    static Matrix identity(const FieldRef& F, int n);
    static Matrix scalar(const FieldRef& F, int n, Elem c);
    static Matrix diag(const FieldRef& F, const std::vector<Elem>& d);

    Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    Elem operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    bool is_identity() const;
    bool is_scalar() const;
    bool is_diagonal() const;

    friend bool operator==(const Matrix& x, const Matrix& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }
    friend bool operator<(const Matrix& x, const Matrix& y) { return x.a < y.a; }
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix scale(const Matrix& x, Elem c);
Matrix inverse(const Matrix& x);  // throws if singular
Matrix transpose(const Matrix& x);
Matrix frobenius(const Matrix& x, unsigned m);  // entrywise x -> x^(p^m)
Matrix power(const Matrix& x, i64 e);
Elem det(const Matrix& x);
int rank(const Matrix& x);
u64 matrix_order(const Matrix& x, u64 cap = u64{1} << 32);  // multiplicative order
Matrix conjugate_by(const Matrix& g, const Matrix& x);    // g x g^-1

// Block-diagonal sum.
Matrix direct_sum(const std::vector<Matrix>& blocks);

// `GF(9):[g^0,g^2;0,g^1]`: entries are 0 or g^k with g the field generator.
std::string to_literal(const Matrix& x);
Matrix parse_literal(const std::string& s);

// Nullspace of a general r x c matrix (row-major) over F: a basis of {v : M v = 0}.
std::vector<std::vector<Elem>> nullspace(const FiniteField& F, std::vector<Elem> M, int rows, int cols);

// ---------------------------------------------------------------------------
// Polynomials over GF(q), coefficients low to high, no trailing zeros.

struct FPoly {
    std::vector<Elem> c;
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const FPoly& x, const FPoly& y) { return x.c == y.c; }
    friend bool operator!=(const FPoly& x, const FPoly& y) { return x.c != y.c; }
};

FPoly poly_add(const FiniteField& F, const FPoly& x, const FPoly& y);
FPoly poly_sub(const FiniteField& F, const FPoly& x, const FPoly& y);
FPoly poly_mul(const FiniteField& F, const FPoly& x, const FPoly& y);
void poly_divmod(const FiniteField& F, const FPoly& x, const FPoly& y, FPoly& q, FPoly& r);
FPoly poly_monic(const FiniteField& F, const FPoly& x);
Elem poly_eval(const FiniteField& F, const FPoly& x, Elem t);
std::string poly_to_string(const FiniteField& F, const FPoly& x);

// Invariant factors f_1 | ... | f_k (monic, degree >= 1) of x.
std::vector<FPoly> rational_canonical_form(const Matrix& x);
FPoly char_poly(const Matrix& x);

}  // namespace selfnorm

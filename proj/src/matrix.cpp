#include "selfnorm/matrix.hpp"

#include <cctype>
#include <sstream>

namespace selfnorm {

Matrix Matrix::identity(const FieldRef& F, int n) { return scalar(F, n, 1); }

Matrix Matrix::scalar(const FieldRef& F, int n, Elem c) {
    Matrix m(F, n);
    for (int i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

Matrix Matrix::diag(const FieldRef& F, const std::vector<Elem>& d) {
    Matrix m(F, static_cast<int>(d.size()));
    for (int i = 0; i < m.n; ++i) m(i, i) = d[i];
    return m;
}

bool Matrix::is_diagonal() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

bool Matrix::is_scalar() const {
    if (!is_diagonal()) return false;
    for (int i = 1; i < n; ++i)
        if ((*this)(i, i) != (*this)(0, 0)) return false;
    return true;
}

bool Matrix::is_identity() const { return is_scalar() && (n == 0 || (*this)(0, 0) == 1); }

Matrix operator*(const Matrix& x, const Matrix& y) {
    const FiniteField& F = *x.F;
    Matrix r(x.F, x.n);
    for (int i = 0; i < x.n; ++i) {
        for (int k = 0; k < x.n; ++k) {
            Elem a = x(i, k);
            if (!a) continue;
            for (int j = 0; j < x.n; ++j) {
                Elem b = y(k, j);
                if (b) r(i, j) = F.add(r(i, j), F.mul(a, b));
            }
        }
    }
    return r;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.F->add(x.a[i], y.a[i]);
    return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.F->sub(x.a[i], y.a[i]);
    return r;
}

Matrix scale(const Matrix& x, Elem c) {
    Matrix r = x;
    for (auto& v : r.a) v = x.F->mul(v, c);
    return r;
}

Matrix transpose(const Matrix& x) {
    Matrix r(x.F, x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r(j, i) = x(i, j);
    return r;
}

Matrix frobenius(const Matrix& x, unsigned m) {
    Matrix r = x;
    for (auto& v : r.a) v = x.F->frobenius(v, m);
    return r;
}

namespace {

// Row reduction of an augmented system; returns the determinant of the left block.
Elem gauss(const FiniteField& F, std::vector<Elem>& M, int rows, int cols, int left_cols, std::vector<int>* pivots) {
    Elem d = 1;
    int r = 0;
    for (int c = 0; c < left_cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (M[static_cast<std::size_t>(i) * cols + c]) {
                piv = i;
                break;
            }
        if (piv < 0) {
            d = 0;
            continue;
        }
        if (piv != r) {
            for (int j = 0; j < cols; ++j) std::swap(M[static_cast<std::size_t>(piv) * cols + j], M[static_cast<std::size_t>(r) * cols + j]);
            d = F.neg(d);
        }
        Elem pv = M[static_cast<std::size_t>(r) * cols + c];
        d = F.mul(d, pv);
        Elem pinv = F.inv(pv);
        for (int j = 0; j < cols; ++j) M[static_cast<std::size_t>(r) * cols + j] = F.mul(M[static_cast<std::size_t>(r) * cols + j], pinv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Elem f = M[static_cast<std::size_t>(i) * cols + c];
            if (!f) continue;
            for (int j = 0; j < cols; ++j)
                M[static_cast<std::size_t>(i) * cols + j] =
                    F.sub(M[static_cast<std::size_t>(i) * cols + j], F.mul(f, M[static_cast<std::size_t>(r) * cols + j]));
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    if (r < left_cols) d = 0;
    return d;
}

}  // namespace

Elem det(const Matrix& x) {
    std::vector<Elem> M = x.a;
    return gauss(*x.F, M, x.n, x.n, x.n, nullptr);
}

int rank(const Matrix& x) {
    std::vector<Elem> M = x.a;
    std::vector<int> piv;
    gauss(*x.F, M, x.n, x.n, x.n, &piv);
    return static_cast<int>(piv.size());
}

Matrix inverse(const Matrix& x) {
    const int n = x.n, cols = 2 * n;
    std::vector<Elem> M(static_cast<std::size_t>(n) * cols, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[static_cast<std::size_t>(i) * cols + j] = x(i, j);
        M[static_cast<std::size_t>(i) * cols + n + i] = 1;
    }
    if (gauss(*x.F, M, n, cols, n, nullptr) == 0) throw InvalidArgument("inverse: singular matrix");
    Matrix r(x.F, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = M[static_cast<std::size_t>(i) * cols + n + j];
    return r;
}

Matrix power(const Matrix& x, i64 e) {
    Matrix b = e < 0 ? inverse(x) : x;
    u64 k = static_cast<u64>(e < 0 ? -e : e);
    Matrix r = Matrix::identity(x.F, x.n);
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

u64 matrix_order(const Matrix& x, u64 cap) {
    Matrix y = x;
    for (u64 k = 1; k <= cap; ++k) {
        if (y.is_identity()) return k;
        y = y * x;
    }
    throw BudgetExceeded("matrix_order: order exceeds cap");
}

Matrix conjugate_by(const Matrix& g, const Matrix& x) { return g * x * inverse(g); }

Matrix direct_sum(const std::vector<Matrix>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.n;
    Matrix r(blocks.at(0).F, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.n; ++i)
            for (int j = 0; j < b.n; ++j) r(off + i, off + j) = b(i, j);
        off += b.n;
    }
    return r;
}

std::string to_literal(const Matrix& x) {
    std::ostringstream os;
    os << x.F->name() << ":[";
    for (int i = 0; i < x.n; ++i) {
        if (i) os << ";";
        for (int j = 0; j < x.n; ++j) {
            if (j) os << ",";
            Elem v = x(i, j);
            if (v == 0)
                os << "0";
            else
                os << "g^" << x.F->log(v);
        }
    }
    os << "]";
    return os.str();
}

Matrix parse_literal(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto fail = [&](std::size_t pos, const std::string& why) {
        throw InvalidArgument("matrix literal, position " + std::to_string(pos) + ": " + why);
    };
    if (s.rfind("GF(", 0) != 0) fail(0, "expected GF(q)");
    std::size_t close = s.find(')');
    if (close == std::string::npos) fail(3, "missing ')'");
    u64 q = std::stoull(s.substr(3, close - 3));
    FieldRef F = FiniteField::of_order(q);
    if (s.compare(close + 1, 2, ":[") != 0) fail(close + 1, "expected ':['");
    if (s.back() != ']') fail(s.size() - 1, "expected ']'");
    std::string body = s.substr(close + 3, s.size() - close - 4);
    std::vector<std::vector<Elem>> rows;
    std::size_t pos = close + 3;
    std::stringstream rs(body);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<Elem> r;
        std::stringstream es(row);
        std::string ent;
        while (std::getline(es, ent, ',')) {
            if (ent == "0") {
                r.push_back(0);
            } else if (ent.rfind("g^", 0) == 0) {
                r.push_back(F->exp(std::stoll(ent.substr(2))));
            } else if (!ent.empty() && std::all_of(ent.begin(), ent.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                r.push_back(F->from_int(std::stoll(ent)));
            } else {
                fail(pos, "bad entry '" + ent + "'");
            }
            pos += ent.size() + 1;
        }
        rows.push_back(r);
    }
    int n = static_cast<int>(rows.size());
    Matrix m(F, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) fail(pos, "matrix is not square");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<Elem>> nullspace(const FiniteField& F, std::vector<Elem> M, int rows, int cols) {
    std::vector<int> piv;
    gauss(F, M, rows, cols, cols, &piv);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Elem> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(M[r * cols + f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------

namespace {

void ptrim(FPoly& x) {
    while (!x.c.empty() && x.c.back() == 0) x.c.pop_back();
}

}  // namespace

FPoly poly_add(const FiniteField& F, const FPoly& x, const FPoly& y) {
    FPoly r;
    r.c.resize(std::max(x.c.size(), y.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.add(i < x.c.size() ? x.c[i] : 0, i < y.c.size() ? y.c[i] : 0);
    ptrim(r);
    return r;
}

FPoly poly_sub(const FiniteField& F, const FPoly& x, const FPoly& y) {
    FPoly ny = y;
    for (auto& v : ny.c) v = F.neg(v);
    return poly_add(F, x, ny);
}

FPoly poly_mul(const FiniteField& F, const FPoly& x, const FPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    FPoly r;
    r.c.assign(x.c.size() + y.c.size() - 1, 0);
    for (std::size_t i = 0; i < x.c.size(); ++i)
        for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(x.c[i], y.c[j]));
    ptrim(r);
    return r;
}

void poly_divmod(const FiniteField& F, const FPoly& x, const FPoly& y, FPoly& q, FPoly& r) {
    if (y.is_zero()) throw InvalidArgument("poly_divmod: division by zero");
    r = x;
    q.c.assign(x.c.size() >= y.c.size() ? x.c.size() - y.c.size() + 1 : 0, 0);
    Elem linv = F.inv(y.c.back());
    while (!r.is_zero() && r.deg() >= y.deg()) {
        int shift = r.deg() - y.deg();
        Elem c = F.mul(r.c.back(), linv);
        q.c[shift] = c;
        for (std::size_t j = 0; j < y.c.size(); ++j) r.c[shift + j] = F.sub(r.c[shift + j], F.mul(c, y.c[j]));
        ptrim(r);
    }
    ptrim(q);
}

FPoly poly_monic(const FiniteField& F, const FPoly& x) {
    if (x.is_zero()) return x;
    FPoly r = x;
    Elem linv = F.inv(x.c.back());
    for (auto& v : r.c) v = F.mul(v, linv);
    return r;
}

Elem poly_eval(const FiniteField& F, const FPoly& x, Elem t) {
    Elem acc = 0;
    for (std::size_t i = x.c.size(); i-- > 0;) acc = F.add(F.mul(acc, t), x.c[i]);
    return acc;
}

std::string poly_to_string(const FiniteField& F, const FPoly& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = x.c.size(); i-- > 0;) {
        Elem v = x.c[i];
        if (!v) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = v == 1 && i > 0;
        if (!unit) os << (v == 1 ? "1" : "g^" + std::to_string(F.log(v)));
        if (i > 0) os << (unit ? "" : "*") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os.str();
}

std::vector<FPoly> rational_canonical_form(const Matrix& A) {
    const FiniteField& F = *A.F;
    const int n = A.n;
    // Smith normal form of xI - A over F[x].
    std::vector<FPoly> M(static_cast<std::size_t>(n) * n);
    auto at = [&](int i, int j) -> FPoly& { return M[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FPoly p;
            p.c = {F.neg(A(i, j))};
            if (i == j) p.c.push_back(1);
            ptrim(p);
            at(i, j) = p;
        }
    for (int k = 0; k < n; ++k) {
        for (;;) {
            // pivot of least degree in the trailing block
            int bi = -1, bj = -1;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j)
                    if (!at(i, j).is_zero() && (bi < 0 || at(i, j).deg() < at(bi, bj).deg())) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) break;
            if (bi != k)
                for (int j = 0; j < n; ++j) std::swap(at(bi, j), at(k, j));
            if (bj != k)
                for (int i = 0; i < n; ++i) std::swap(at(i, bj), at(i, k));
            bool clean = true;
            FPoly qq, rr;
            for (int i = k + 1; i < n; ++i) {
                if (at(i, k).is_zero()) continue;
                poly_divmod(F, at(i, k), at(k, k), qq, rr);
                for (int j = k; j < n; ++j) at(i, j) = poly_sub(F, at(i, j), poly_mul(F, qq, at(k, j)));
                if (!rr.is_zero()) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                if (at(k, j).is_zero()) continue;
                poly_divmod(F, at(k, j), at(k, k), qq, rr);
                for (int i = k; i < n; ++i) at(i, j) = poly_sub(F, at(i, j), poly_mul(F, qq, at(i, k)));
                if (!rr.is_zero()) clean = false;
            }
            if (!clean) continue;
            // divisibility of the remaining block by the pivot
            int bad = -1;
            for (int i = k + 1; i < n && bad < 0; ++i)
                for (int j = k + 1; j < n; ++j) {
                    poly_divmod(F, at(i, j), at(k, k), qq, rr);
                    if (!rr.is_zero()) {
                        bad = i;
                        break;
                    }
                }
            if (bad < 0) break;
            for (int j = k; j < n; ++j) at(k, j) = poly_add(F, at(k, j), at(bad, j));
        }
    }
    std::vector<FPoly> inv;
    for (int k = 0; k < n; ++k) {
        FPoly d = poly_monic(F, at(k, k));
        if (d.deg() >= 1) inv.push_back(d);
    }
    std::sort(inv.begin(), inv.end(), [](const FPoly& x, const FPoly& y) { return x.deg() < y.deg(); });
    return inv;
}

FPoly char_poly(const Matrix& x) {
    FPoly r;
    r.c = {1};
    for (const auto& f : rational_canonical_form(x)) r = poly_mul(*x.F, r, f);
    return r;
}

}  // namespace selfnorm

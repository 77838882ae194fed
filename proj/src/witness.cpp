#include "selfnorm/witness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace selfnorm {

namespace {

GroupSpec ambient_spec(int n, u64 q, int eps) { return GroupSpec::make(eps == 1 ? Kind::GL : Kind::GU, n, q); }

std::string poly_text(const Matrix& A) { return poly_to_string(*A.F, char_poly(A)); }

u64 lcm_u64(u64 x, u64 y) { return x / std::gcd(x, y) * y; }

// Basis of {X : X A = A X}.
std::vector<Matrix> commutant(const Matrix& A) {
    const FiniteField& F = *A.F;
    const int n = A.n, N = n * n;
    std::vector<Elem> M(static_cast<std::size_t>(N) * N, 0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            std::size_t row = static_cast<std::size_t>(k * n + l) * N;
            for (int m = 0; m < n; ++m) {
                M[row + k * n + m] = F.add(M[row + k * n + m], A(m, l));
                M[row + m * n + l] = F.sub(M[row + m * n + l], A(k, m));
            }
        }
    std::vector<Matrix> out;
    for (auto& v : nullspace(F, M, N, N)) {
        Matrix X(A.F, n);
        X.a.assign(v.begin(), v.end());
        out.push_back(std::move(X));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// block-scalar witnesses

WitnessOutcome build_z_mode(int n, u64 q, int eps, unsigned subfield_m) {
    if (q % 2 == 0) throw InvalidArgument("build_z needs q odd");
    if (n < 2) throw InvalidArgument("build_z needs n >= 2");
    WitnessOutcome out;
    TwoAdicExpansion ex = two_adic(static_cast<u64>(n));
    if (ex.t() < 2) {
        out.reason = "n = " + std::to_string(n) + " is a power of 2";
        return out;
    }
    auto [p, a0] = prime_power(q);
    u64 N;
    if (subfield_m > 0) {
        if (eps != 1 || a0 % subfield_m != 0)
            throw InvalidArgument("subfield mode needs eps = +1 and m | a");
        N = odd_part(ipow(p, subfield_m) - 1);
    } else {
        N = odd_part(eps == 1 ? q - 1 : q + 1);
    }
    if (N == 1) {
        out.reason = subfield_m ? "p^" + std::to_string(subfield_m) + " - 1 is a power of 2"
                                : "q - eps is a power of 2";
        return out;
    }
    GroupSpec full = ambient_spec(n, q, eps);
    FieldRef F = full.field();
    WitnessElement w;
    w.ambient = full;
    w.root_order = N;
    w.subfield = subfield_m;
    const u64 inv2 = invmod(2, static_cast<i64>(N));
    w.b = (N - powmod(inv2, static_cast<u64>(ex.r[0] - ex.r[1]), N)) % N;
    const Elem lambda2 = F->root_of_unity(N);
    const Elem lambda1 = F->pow(lambda2, static_cast<i64>(w.b));
    std::vector<Elem> d;
    for (int j = 0; j < ex.t(); ++j) {
        int size = 1 << ex.r[j];
        Elem l = j == 0 ? lambda1 : j == 1 ? lambda2 : 1;
        w.blocks.push_back(size);
        w.lambdas.push_back(l);
        d.insert(d.end(), static_cast<std::size_t>(size), l);
    }
    w.s = Matrix::diag(F, d);
    std::ostringstream c;
    c << "N = " << N << ", b = " << w.b << ", blocks";
    for (int s : w.blocks) c << ' ' << s;
    c << (subfield_m ? ", scalars in GF(" + std::to_string(p) + "^" + std::to_string(subfield_m) + ")" : ", full field");
    w.construction = c.str();
    if (w.s.is_scalar()) {
        out.reason = "z is central (b = 1 mod " + std::to_string(N) + ")";
        return out;
    }
    if (det(w.s) != 1) throw std::logic_error("build_z produced determinant != 1");
    if (matrix_order(w.s) % 2 == 0) throw std::logic_error("build_z produced an element of even order");
    out.built = true;
    out.z = std::move(w);
    return out;
}

WitnessOutcome build_z(int n, u64 q, int eps, const QDescription& Q) {
    Sn2sQVerdict v = sn2s_with_Q(n, q, eps, Q);
    if (v.holds) {
        WitnessOutcome out;
        out.refused_conditions = v.conditions;
        out.reason = "no witness: " + v.detail;
        return out;
    }
    const unsigned m0 = field_part_m0(Q, q, eps);
    const unsigned a = (eps == 1 ? 1u : 2u) * prime_power(q).second;
    WitnessOutcome out = build_z_mode(n, q, eps, eps == 1 && m0 < a ? m0 : 0);
    if (!out.built) out.reason = "construction failed although no condition holds: " + out.reason;
    return out;
}

// ---------------------------------------------------------------------------
// conjugacy and centralisers of semisimple elements

bool is_semisimple(const Matrix& A) { return matrix_order(A) % A.F->p() != 0; }

bool semisimple_conjugate(const Matrix& A, const Matrix& B) {
    if (!is_semisimple(A) || !is_semisimple(B)) throw InvalidArgument("semisimple_conjugate: input is not semisimple");
    return char_poly(A) == char_poly(B);
}

mpz_class semisimple_centralizer_order(const GroupSpec& full, const Matrix& s) {
    const FiniteField& F = *s.F;
    const u64 p = F.p();
    const u64 o = matrix_order(s);
    if (o % p == 0) throw InvalidArgument("centraliser formula needs a semisimple element");
    const unsigned K = static_cast<unsigned>(lcm_u64(F.k(), o == 1 ? 1 : mult_order(p, o)));
    FieldRef big = FiniteField::get(p, K);
    std::vector<Elem> emb = F.embedding_into(*big);
    const int n = s.n;
    const Elem z = big->root_of_unity(o);
    std::vector<int> mult(o, 0);
    int total = 0;
    for (u64 j = 0; j < o; ++j) {
        Matrix M(big, n);
        const Elem zj = big->pow(z, static_cast<i64>(j));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M(r, c) = emb[s(r, c)];
        for (int r = 0; r < n; ++r) M(r, r) = big->sub(M(r, r), zj);
        mult[j] = n - rank(M);
        total += mult[j];
    }
    if (total != n) throw std::logic_error("eigenvalue multiplicities do not add up to n");
    const u64 q = full.q;
    std::vector<bool> seen(o, false);
    mpz_class order = 1;
    for (u64 j = 0; j < o; ++j) {
        if (seen[j] || mult[j] == 0) continue;
        u64 d = 0, k = j;
        do {
            seen[k] = true;
            if (mult[k] != mult[j]) throw std::logic_error("eigenvalue orbit with unequal multiplicities");
            k = full.eps == 1 ? mulmod(k, q % o, o) : (o - mulmod(k, q % o, o)) % o;
            ++d;
        } while (k != j);
        const u64 qd = ipow(q, static_cast<unsigned>(d));
        const int e = full.eps == 1 || d % 2 == 0 ? 1 : -1;
        order *= gl_order(mult[j], qd, e);
    }
    return order;
}

SReport check_S_conditions(const GroupSpec& full, const Matrix& s, const QDescription& Q, u64 budget) {
    if (full.special() || full.projective()) throw InvalidArgument("check_S_conditions needs GL or GU as ambient group");
    if (!in_base_group(full, s)) throw InvalidArgument("s is not in " + full.str());
    if (det(s) != 1) throw InvalidArgument("s does not have determinant 1");
    SReport r;
    r.ambient = full.str();
    const u64 p = full.p();
    const u64 o = matrix_order(s);
    const bool semisimple = o % p != 0;

    // S1
    {
        std::ostringstream ev;
        ev << "order " << o;
        if (o % 2 == 0) {
            ev << " is even";
        } else if (!semisimple) {
            ev << " is divisible by p, s is not semisimple";
        } else {
            mpz_class C = semisimple_centralizer_order(full, s);
            mpz_class G = gl_order(full.n, full.q, full.eps);
            mpz_class idx = G / C;
            while (idx % p == 0) idx /= p;
            r.s1.holds = idx % 2 != 0;
            ev << ", |C(s)| = " << C.get_str() << ", p'-part of the index " << idx.get_str()
               << (r.s1.holds ? " (odd)" : " (even)");
        }
        r.s1.evidence = ev.str();
    }

    auto decide = [&](const Matrix& B) {
        if (semisimple && is_semisimple(B)) return semisimple_conjugate(s, B);
        return are_conjugate(full, s, B, budget).conjugate;
    };

    // S2
    {
        Matrix s2 = s * s;
        bool conj = decide(s2);
        r.s2.holds = !conj;
        r.s2.evidence = "charpoly(s) = " + poly_text(s) + ", charpoly(s^2) = " + poly_text(s2) +
                        (conj ? ": conjugate" : ": not conjugate");
    }

    // S3
    {
        std::size_t checked = 0;
        r.s3.holds = true;
        std::ostringstream ev;
        for (Elem t : center_scalars(full)) {
            if (t == 1) continue;
            ++checked;
            if (decide(scale(s, t))) {
                r.s3.holds = false;
                ev << "s is conjugate to s t for t = " << to_literal(Matrix::scalar(full.field(), 1, t)) << "; ";
            }
        }
        ev << checked << " nontrivial central scalars checked";
        r.s3.evidence = ev.str();
    }

    // S4
    {
        std::vector<AutomorphismDesc> gens;
        for (unsigned m : Q.field_powers) gens.push_back({m, false, std::nullopt});
        if (Q.graph) gens.push_back({0, true, std::nullopt});
        for (const Matrix& d : Q.diagonal) gens.push_back({0, false, d});
        r.s4.holds = true;
        std::ostringstream ev;
        for (const auto& a : gens) {
            Matrix img = apply_automorphism(full, s, a);
            std::optional<Matrix> g;
            if (img == s) {
                g = Matrix::identity(s.F, s.n);
            } else {
                ConjugacyResult c = are_conjugate(full, s, img, budget);
                if (c.conjugate) g = c.conjugator;
            }
            if (g && conjugate_by(*g, s) != img) throw std::logic_error("conjugator certificate does not replay");
            ev << a.str() << ": " << (g ? "conjugate" : "not conjugate") << "; ";
            if (!g) {
                r.s4.holds = false;
                continue;
            }
            r.s4.images.push_back(img);
            r.s4.conjugators.push_back(*g);
        }
        ev << gens.size() << " generators of Q checked";
        r.s4.evidence = ev.str();
    }
    return r;
}

// ---------------------------------------------------------------------------
// p = 2

Matrix antidiagonal_form_change(const FieldRef& F2, u64 q, int n) {
    const FiniteField& F = *F2;
    if (F.q() != q * q) throw InvalidArgument("antidiagonal_form_change needs GF(q^2)");
    const Elem minus1 = F.neg(1);
    auto norm = [&](Elem x) { return F.pow(x, static_cast<i64>(q + 1)); };
    Elem mu = 0;
    for (Elem x = 1; x < F.q() && !mu; ++x)
        if (norm(x) == minus1) mu = x;
    Elem nu = 0;
    for (Elem x = 1; x < F.q() && !nu; ++x)
        if (x != mu && norm(x) == minus1) nu = x;
    if (!mu || !nu) throw std::logic_error("no isotropic vectors found");
    // alpha (1 + mu^q nu) = 1
    const Elem alpha = F.inv(F.add(1, F.mul(F.pow(mu, static_cast<i64>(q)), nu)));
    Matrix C(F2, n);
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        C(i, i) = 1;
        C(j, i) = mu;
        C(i, j) = alpha;
        C(j, j) = F.mul(alpha, nu);
    }
    if (n % 2) C(n / 2, n / 2) = 1;
    Matrix Cbar(F2, n);
    for (std::size_t k = 0; k < C.a.size(); ++k) Cbar.a[k] = F.pow(C.a[k], static_cast<i64>(q));
    if (transpose(Cbar) * C != longest_element(F2, n)) throw std::logic_error("form change does not reach the antidiagonal form");
    return C;
}

WitnessElement p2_alpha0_witness(int n, u64 q, int eps, unsigned m, bool allow_experimental) {
    if (n < 2) throw InvalidArgument("p2_alpha0_witness needs n >= 2");
    if (q < 2 || !is_power_of_two(q)) throw InvalidArgument("p2_alpha0_witness needs q a power of 2");
    const unsigned a = log2_exact(q);
    if (m == 0 || a % m != 0 || !is_power_of_two(a / m))
        throw InvalidArgument("m must divide a with a/m a power of 2 (m is the odd part of a)");
    if (q == 2) throw InvalidArgument("no valid zeta0: GF(2) is too small");
    if (q == 4 && !allow_experimental) throw InvalidArgument("q = 4 is experimental; pass allow_experimental");
    GroupSpec full = ambient_spec(n, q, eps);
    FieldRef F = full.field();
    WitnessElement w;
    w.ambient = full;
    w.blocks = n == 2 ? std::vector<int>{1, 1} : std::vector<int>{1, n - 2, 1};

    if (q == 4) {
        // zeta0 of order 5 lives in GF(16); search the 2 x 2 block.
        FieldRef big = FiniteField::get(2, 4);
        const Elem zeta = big->root_of_unity(5);
        const Elem tr = big->add(zeta, big->inv(zeta));
        std::vector<Elem> emb = F->embedding_into(*big);
        GroupSpec two = ambient_spec(2, q, eps);
        const u64 Q = F->q();
        std::optional<Matrix> found;
        for (u64 code = 0; code < Q * Q * Q * Q && !found; ++code) {
            Matrix X(F, 2);
            u64 c = code;
            for (int k = 3; k >= 0; --k) {
                X.a[static_cast<std::size_t>(k)] = static_cast<Elem>(c % Q);
                c /= Q;
            }
            if (det(X) != 1 || emb[F->add(X(0, 0), X(1, 1))] != tr) continue;
            if (!in_base_group(two, X)) continue;
            found = X;
        }
        if (!found) throw std::logic_error("no rational element with the eigenvalues of s0 in GL_2^eps(4)");
        std::vector<Matrix> parts{*found};
        if (n > 2) parts.push_back(Matrix::identity(F, n - 2));
        w.s = direct_sum(parts);
        w.root_order = 5;
        w.lambdas = {zeta, 1, big->inv(zeta)};
        w.experimental = true;
        w.construction = "q = 4: searched GL_2^eps(4) for a rational element with eigenvalues zeta0^(+-1), zeta0 of order 5 in GF(16)";
        return w;
    }

    Elem zeta;
    if (m > 1) {
        zeta = F->root_of_unity(ipow(2, m) - 1);
        if (F->pow(zeta, 3) == 1) throw std::logic_error("zeta0^2 = zeta0^-1");
    } else {
        if ((q - 1) % 5 != 0) throw InvalidArgument("no valid zeta0: no element of order 5 in GF(q)");
        zeta = F->root_of_unity(5);
    }
    w.root_order = F->order(zeta);
    std::vector<Elem> d(static_cast<std::size_t>(n), 1);
    d.front() = zeta;
    d.back() = F->inv(zeta);
    w.lambdas = {zeta, 1, F->inv(zeta)};
    Matrix s0 = Matrix::diag(F, d);
    if (eps == 1) {
        w.s = s0;
        w.construction = "s0 = diag(zeta0, 1, ..., zeta0^-1), zeta0 of order " + std::to_string(w.root_order);
    } else {
        Matrix C = antidiagonal_form_change(F, q, n);
        w.s = C * s0 * inverse(C);
        w.construction = "s0 = diag(zeta0, 1, ..., zeta0^-1) for the antidiagonal form, zeta0 of order " +
                         std::to_string(w.root_order) + ", moved to the form J = I";
    }
    if (!in_base_group(full, w.s) || det(w.s) != 1) throw std::logic_error("p2 witness is not in SL_n^eps(q)");
    return w;
}

// ---------------------------------------------------------------------------
// pre-images

PreimageResult two_power_preimage(const GroupSpec& spec, const Matrix& s_prime) {
    GroupSpec full = spec.full();
    if (!in_base_group(full, s_prime)) throw InvalidArgument("representative is not in " + full.str());
    PreimageResult r;
    const u64 o = matrix_order(s_prime);
    for (u64 k : divisors(o))
        if (power(s_prime, static_cast<i64>(k)).is_scalar()) {
            r.image_order = k;
            break;
        }
    if (r.image_order % 2 == 0) throw InvalidArgument("the image does not have odd order");
    SylowDecomposition P = build_sylow(full.n, full.q, full.eps);
    const Matrix sinv = inverse(s_prime);
    for (const Matrix& x : P.generators)
        if (!(s_prime * x * sinv * inverse(x)).is_scalar())
            throw InvalidArgument("the image does not centralise the image of the Sylow 2-subgroup");
    u64 best = 0;
    for (Elem z : center_scalars(full)) {
        Matrix c = scale(s_prime, z);
        u64 oz = matrix_order(c);
        r.transcript.emplace_back(z, oz);
        if (is_power_of_two(oz) && (best == 0 || oz < best)) {
            best = oz;
            r.preimage = c;
        }
    }
    if (r.preimage) {
        if (!is_power_of_two(matrix_order(*r.preimage))) throw std::logic_error("pre-image of non-2-power order");
        r.found = true;
    }
    return r;
}

// ---------------------------------------------------------------------------
// tori

TorusReport torus_degenerate(int n, u64 q, int eps, u64 budget) {
    if (n < 2) throw InvalidArgument("torus_degenerate needs n >= 2");
    FieldRef F = FiniteField::of_order(eps == 1 ? q : q * q);
    const u64 Q1 = F->q() - 1;  // exponents live modulo Q1
    const int free = eps == 1 ? n - 1 : n / 2;
    u64 size = 1;
    for (int i = 0; i < free; ++i) {
        if (size > budget / Q1) throw BudgetExceeded("torus enumeration over budget");
        size *= Q1;
    }
    const int R = n * (n - 1) / 2;
    std::vector<bool> separated(static_cast<std::size_t>(R), false);
    std::vector<u64> x(static_cast<std::size_t>(free), 0), e(static_cast<std::size_t>(n));
    TorusReport rep;
    for (u64 code = 0; code < size; ++code) {
        u64 c = code;
        for (int i = 0; i < free; ++i) {
            x[i] = c % Q1;
            c /= Q1;
        }
        if (eps == 1) {
            u64 sum = 0;
            for (int i = 0; i < n - 1; ++i) {
                e[i] = x[i];
                sum = (sum + x[i]) % Q1;
            }
            e[n - 1] = (Q1 - sum) % Q1;
        } else {
            // t_(n+1-i) = t_i^(-q); the middle entry (n odd) is fixed by det = 1
            u64 det_exp = 0;
            for (int i = 0; i < free; ++i) {
                e[i] = x[i];
                e[n - 1 - i] = (Q1 - mulmod(x[i], q % Q1, Q1)) % Q1;
                det_exp = (det_exp + e[i] + e[n - 1 - i]) % Q1;
            }
            if (n % 2) {
                e[n / 2] = (Q1 - det_exp) % Q1;
                // F-stability of the middle entry: t^(q+1) = 1
                if (mulmod(e[n / 2], (q + 1) % Q1, Q1) != 0) continue;
            } else if (det_exp != 0) {
                continue;
            }
        }
        ++rep.torus_order;
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k)
                if (e[i] != e[j]) separated[k] = true;
    }
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if (!separated[k]) rep.trivial_roots.emplace_back(i + 1, j + 1);
    rep.degenerate = !rep.trivial_roots.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// SL_4

namespace {

Matrix jordan(const FieldRef& F, int size) {
    Matrix J = Matrix::identity(F, size);
    for (int i = 0; i + 1 < size; ++i) J(i, i + 1) = 1;
    return J;
}

}  // namespace

TorusIdentityReport sl4_torus_identity(u64 q, bool twisted) {
    if (q % 2 == 0) throw InvalidArgument("sl4_torus_identity needs q odd");
    FieldRef F = FiniteField::of_order(q);
    const FiniteField& f = *F;
    const Matrix J = jordan(F, 2), I2 = Matrix::identity(F, 2);
    struct Rep {
        const char* name;
        Matrix u;
    };
    const std::vector<Rep> reps = {{"diag(J,J)", direct_sum({J, J})},
                                   {"diag(J,I2)", direct_sum({J, I2})},
                                   {"diag(I2,J)", direct_sum({I2, J})},
                                   {"I4", Matrix::identity(F, 4)}};
    Matrix perm(F, 4);  // (1,3)(2,4)
    perm(0, 2) = perm(2, 0) = perm(1, 3) = perm(3, 1) = 1;
    const Elem two = f.from_int(2), half = f.inv(two);
    TorusIdentityReport rep;
    for (Elem a = 1; a < f.q(); ++a) {
        const Elem ai = f.inv(a);
        Matrix t = Matrix::diag(F, {f.mul(two, a), a, ai, f.mul(half, ai)});
        Matrix Ft = frobenius(t, f.k());
        if (twisted) Ft = perm * Ft * inverse(perm);
        Matrix d = inverse(t) * Ft;
        for (std::size_t k = 0; k < reps.size(); ++k) {
            const Matrix& u = reps[k].u;
            ++rep.checks;
            std::string where = std::string(reps[k].name) + " at a = " + std::to_string(a);
            if (conjugate_by(t, u) != u * u) rep.failures.push_back(where + ": t u t^-1 != u^2");
            bool in_component = d.is_diagonal() && det(d) == 1 && d * u == u * d;
            if (k == 0) in_component = in_component && d(0, 0) == d(1, 1) && d(2, 2) == d(3, 3) && f.mul(d(0, 0), d(2, 2)) == 1;
            if (k == 1) in_component = in_component && d(0, 0) == d(1, 1);
            if (k == 2) in_component = in_component && d(2, 2) == d(3, 3);
            if (!in_component) rep.failures.push_back(where + ": t^-1 F'(t) outside the identity component of C_T0(u)");
        }
    }
    rep.holds = rep.failures.empty();
    return rep;
}

SquareConjugacyReport sl4_nonregular_square_conjugacy(u64 q, u64 budget) {
    if (q % 2 == 0) throw InvalidArgument("sl4_nonregular_square_conjugacy needs q odd");
    FieldRef F = FiniteField::of_order(q);
    const FiniteField& f = *F;
    const GroupSpec gl = GroupSpec::make(Kind::GL, 4, q);
    const Matrix one = Matrix::identity(F, 1), I2 = Matrix::identity(F, 2);
    const std::vector<std::pair<std::string, Matrix>> parts = {
        {"3,1", direct_sum({jordan(F, 3), one})},
        {"2,2", direct_sum({jordan(F, 2), jordan(F, 2)})},
        {"2,1,1", direct_sum({jordan(F, 2), I2})},
        {"1,1,1,1", Matrix::identity(F, 4)}};
    SquareConjugacyReport rep;
    rep.holds = true;
    for (const auto& [name, base] : parts) {
        for (Elem tw = 1; tw < f.q(); ++tw) {
            SquareConjugacyEntry e;
            e.partition = name;
            e.twist = tw;
            Matrix D = Matrix::identity(F, 4);
            D(0, 0) = tw;
            e.u = conjugate_by(D, base);
            const Matrix u2 = e.u * e.u;
            if (e.u == u2) {
                e.conjugate = true;
                e.conjugator = Matrix::identity(F, 4);
            } else {
                ConjugacyResult c = are_conjugate(gl, e.u, u2);
                if (!c.conjugate) throw std::logic_error("u and u^2 are not GL-conjugate");
                const Matrix& g0 = *c.conjugator;
                std::vector<Matrix> B = commutant(u2);
                u64 total = 1;
                for (std::size_t i = 0; i < B.size(); ++i) {
                    if (total > budget / f.q()) throw BudgetExceeded("centraliser coset search over budget");
                    total *= f.q();
                }
                std::vector<Elem> coef(B.size(), 0);
                for (u64 code = 0; code < total; ++code) {
                    u64 cc = code;
                    for (auto& x : coef) {
                        x = static_cast<Elem>(cc % f.q());
                        cc /= f.q();
                    }
                    ++e.searched;
                    Matrix X(F, 4);
                    for (std::size_t i = 0; i < B.size(); ++i)
                        if (coef[i])
                            for (std::size_t k = 0; k < X.a.size(); ++k) X.a[k] = f.add(X.a[k], f.mul(coef[i], B[i].a[k]));
                    const Elem dx = det(X);
                    if (dx == 0 || f.mul(dx, det(g0)) != 1) continue;
                    Matrix g = X * g0;
                    if (conjugate_by(g, e.u) != u2 || det(g) != 1) throw std::logic_error("coset search certificate fails");
                    e.conjugate = true;
                    e.conjugator = g;
                    break;
                }
            }
            rep.holds = rep.holds && e.conjugate;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace selfnorm

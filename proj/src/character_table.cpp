#include "selfnorm/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "selfnorm/matrix.hpp"

namespace selfnorm {

// ---------------------------------------------------------------------------
// Class matrices

ClassMatrices::ClassMatrices(const GroupData& G) : k_(G.class_count()), a_(k_ * k_ * k_, 0) {
    // For each target rep_k, every x in G pairs with the unique y = x^-1 rep_k.
    for (std::size_t k = 0; k < k_; ++k) {
        u32 r = G.class_rep(k);
        for (u32 x = 0; x < G.order(); ++x) {
            u32 y = G.mul(G.inv(x), r);
            ++a_[(static_cast<std::size_t>(G.class_of(x)) * k_ + G.class_of(y)) * k_ + k];
        }
    }
}

std::vector<u64> ClassMatrices::matrix(std::size_t j) const {
    std::vector<u64> M(k_ * k_);
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t k = 0; k < k_; ++k) M[i * k_ + k] = coeff(i, j, k);
    return M;
}

std::vector<u64> class_matrix(const GroupData& G, std::size_t j) { return ClassMatrices(G).matrix(j); }

// ---------------------------------------------------------------------------
// Linear algebra over GF(l)

namespace {

using Vec = std::vector<u64>;

struct ModL {
    u64 l;
    u64 add(u64 a, u64 b) const { return (a + b) % l; }
    u64 sub(u64 a, u64 b) const { return (a + l - b) % l; }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, l); }
    u64 inv(u64 a) const { return powmod(a, l - 2, l); }
};

// Characteristic polynomial (low to high) of an upper-Hessenberg reduction of R.
Vec char_poly_mod(const ModL& F, std::vector<Vec> H) {
    const std::size_t n = H.size();
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && H[piv][j] == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap(H[piv], H[j + 1]);
            for (auto& row : H) std::swap(row[piv], row[j + 1]);
        }
        u64 hinv = F.inv(H[j + 1][j]);
        for (std::size_t i = j + 2; i < n; ++i) {
            if (H[i][j] == 0) continue;
            u64 u = F.mul(H[i][j], hinv);
            for (std::size_t c = 0; c < n; ++c) H[i][c] = F.sub(H[i][c], F.mul(u, H[j + 1][c]));
            for (std::size_t r = 0; r < n; ++r) H[r][j + 1] = F.add(H[r][j + 1], F.mul(u, H[r][i]));
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{t=m-i+1}^{m} h_{t,t-1}) p_{m-i-1}, 1-indexed
    auto h = [&](std::size_t i, std::size_t j) { return H[i - 1][j - 1]; };
    std::vector<Vec> p(n + 1);
    p[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        Vec cur(m + 1, 0);
        for (std::size_t d = 0; d < p[m - 1].size(); ++d) {
            cur[d + 1] = F.add(cur[d + 1], p[m - 1][d]);
            cur[d] = F.sub(cur[d], F.mul(h(m, m), p[m - 1][d]));
        }
        u64 prod = 1;
        for (std::size_t i = 1; i < m; ++i) {
            prod = F.mul(prod, h(m - i + 1, m - i));
            u64 c = F.mul(h(m - i, m), prod);
            if (c == 0) continue;
            for (std::size_t d = 0; d < p[m - i - 1].size(); ++d) cur[d] = F.sub(cur[d], F.mul(c, p[m - i - 1][d]));
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

// Distinct roots of a polynomial that splits over GF(l); empty if it does not split.
std::vector<u64> split_roots(const ModL& F, Vec f) {
    std::vector<u64> roots;
    for (u64 x = 0; x < F.l && f.size() > 1; ++x) {
        bool found = false;
        for (;;) {
            // synthetic division by (t - x)
            std::size_t n = f.size() - 1;
            Vec q(n, 0);
            u64 carry = 0;
            for (std::size_t d = n; d-- > 0;) {
                carry = F.add(f[d + 1], F.mul(carry, x));
                q[d] = carry;
            }
            u64 rem = F.add(f[0], F.mul(carry, x));
            if (rem != 0) break;
            f = std::move(q);
            found = true;
            if (f.size() == 1) break;
        }
        if (found) roots.push_back(x);
    }
    if (f.size() > 1) return {};
    return roots;
}

// Column nullspace of an r x c matrix over GF(l).
std::vector<Vec> nullspace_mod(const ModL& F, std::vector<Vec> A, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < A.size(); ++c) {
        std::size_t p = row;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[row]);
        u64 iv = F.inv(A[row][c]);
        for (auto& v : A[row]) v = F.mul(v, iv);
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][c] == 0) continue;
            u64 u = A[r][c];
            for (std::size_t t = 0; t < cols; ++t) A[r][t] = F.sub(A[r][t], F.mul(u, A[row][t]));
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<Vec> out;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.sub(0, A[r][f]);
        out.push_back(std::move(v));
    }
    return out;
}

// Reduced row echelon basis; returns pivot columns.
std::vector<std::size_t> rref(const ModL& F, std::vector<Vec>& B) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t cols = B.empty() ? 0 : B[0].size();
    for (std::size_t c = 0; c < cols && row < B.size(); ++c) {
        std::size_t p = row;
        while (p < B.size() && B[p][c] == 0) ++p;
        if (p == B.size()) continue;
        std::swap(B[p], B[row]);
        u64 iv = F.inv(B[row][c]);
        for (auto& v : B[row]) v = F.mul(v, iv);
        for (std::size_t r = 0; r < B.size(); ++r) {
            if (r == row || B[r][c] == 0) continue;
            u64 u = B[r][c];
            for (std::size_t t = 0; t < cols; ++t) B[r][t] = F.sub(B[r][t], F.mul(u, B[row][t]));
        }
        pivots.push_back(c);
        ++row;
    }
    B.resize(row);
    return pivots;
}

u64 primitive_root(u64 l) {
    auto ps = prime_divisors(l - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 p : ps)
            if (powmod(g, (l - 1) / p, l) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

struct SplitFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Common eigenvectors (normalised to 1 at the identity class) of all class matrices mod l.
std::vector<Vec> common_eigenvectors(const ModL& F, const ClassMatrices& CM) {
    const std::size_t k = CM.classes();
    std::vector<std::vector<Vec>> spaces;
    {
        std::vector<Vec> full(k, Vec(k, 0));
        for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    std::vector<std::vector<Vec>> done;
    for (std::size_t j = 1; j < k && !spaces.empty(); ++j) {
        std::vector<Vec> M(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t t = 0; t < k; ++t) M[i][t] = CM.coeff(i, j, t) % F.l;
        std::vector<std::vector<Vec>> next;
        for (auto& B : spaces) {
            auto piv = rref(F, B);
            const std::size_t d = B.size();
            // R[r][m] = coefficient of b_r in M b_m
            std::vector<Vec> MB(d, Vec(k, 0));
            for (std::size_t m = 0; m < d; ++m)
                for (std::size_t i = 0; i < k; ++i) {
                    u64 s = 0;
                    for (std::size_t t = 0; t < k; ++t)
                        if (B[m][t]) s = F.add(s, F.mul(M[i][t], B[m][t]));
                    MB[m][i] = s;
                }
            std::vector<Vec> R(d, Vec(d));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t m = 0; m < d; ++m) R[r][m] = MB[m][piv[r]];
            auto roots = split_roots(F, char_poly_mod(F, R));
            if (roots.empty()) throw SplitFailure("characteristic polynomial does not split");
            std::size_t total = 0;
            for (u64 lam : roots) {
                auto A = R;
                for (std::size_t r = 0; r < d; ++r) A[r][r] = F.sub(A[r][r], lam);
                auto ns = nullspace_mod(F, A, d);
                std::vector<Vec> sub;
                for (auto& c : ns) {
                    Vec v(k, 0);
                    for (std::size_t m = 0; m < d; ++m)
                        if (c[m])
                            for (std::size_t t = 0; t < k; ++t) v[t] = F.add(v[t], F.mul(c[m], B[m][t]));
                    sub.push_back(std::move(v));
                }
                total += sub.size();
                (sub.size() == 1 ? done : next).push_back(std::move(sub));
            }
            if (total != d) throw SplitFailure("class matrix is not diagonalisable on an eigenspace");
        }
        spaces = std::move(next);
    }
    for (auto& s : spaces)
        if (s.size() == 1) done.push_back(std::move(s));
    if (done.size() != k) throw SplitFailure("eigenspaces did not split into lines");
    std::vector<Vec> out;
    for (auto& s : done) {
        Vec v = s[0];
        if (v[0] == 0) throw SplitFailure("eigenvector vanishes at the identity class");
        u64 iv = F.inv(v[0]);
        for (auto& x : v) x = F.mul(x, iv);
        out.push_back(std::move(v));
    }
    if (out.size() != k) throw SplitFailure("wrong number of characters");
    return out;
}

std::string row_key(const std::vector<Cyclotomic>& vals) {
    std::string s;
    for (const auto& v : vals) {
        s += v.serialize();
        s += '|';
    }
    return s;
}

}  // namespace

u64 dixon_prime(u64 e, u64 order, u64 after) {
    u64 bound = static_cast<u64>(2 * std::sqrt(static_cast<long double>(order)));
    bound = std::max(bound, after);
    u64 l = (bound == 0 ? 0 : ((bound - 1) / e + 1) * e) + 1;
    if (l <= bound) l += e;
    while (!is_prime(l)) l += e;
    return l;
}

long CharacterTable::find_row(const std::vector<Cyclotomic>& values) const {
    auto it = index_.find(row_key(values));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

// Builds the table mod l and lifts it; throws SplitFailure when l does not work.
std::vector<std::vector<Cyclotomic>> lift_table(const GroupData& G, const ClassMatrices& CM, u64 l, u64 e) {
    const ModL F{l};
    const std::size_t k = G.class_count();
    auto omegas = common_eigenvectors(F, CM);
    std::vector<std::size_t> invc(k);
    for (std::size_t c = 0; c < k; ++c) invc[c] = G.class_of(G.inv(G.class_rep(c)));
    const u64 z = powmod(primitive_root(l), (l - 1) / e, l);
    const u64 root_bound = static_cast<u64>(std::sqrt(static_cast<long double>(G.order()))) + 1;

    // powers[c][s] = class of rep_c^s
    std::vector<std::vector<std::size_t>> powers(k);
    for (std::size_t c = 0; c < k; ++c) {
        u64 o = G.class_order(c);
        u32 r = G.class_rep(c), x = G.identity();
        for (u64 s = 0; s < o; ++s) {
            powers[c].push_back(G.class_of(x));
            x = G.mul(x, r);
        }
    }

    std::vector<std::vector<Cyclotomic>> table;
    for (const auto& w : omegas) {
        u64 S = 0;
        for (std::size_t c = 0; c < k; ++c)
            S = F.add(S, F.mul(F.mul(w[c], w[invc[c]]), F.inv(G.class_size(c) % l)));
        if (S == 0) throw SplitFailure("zero norm");
        u64 d2 = F.mul(G.order() % l, F.inv(S));
        u64 d = 0;
        for (u64 t = 1; t <= root_bound; ++t)
            if (mulmod(t, t, l) == d2) {
                d = t;
                break;
            }
        if (d == 0 || G.order() % d) throw SplitFailure("no admissible degree");
        Vec chi(k);
        for (std::size_t c = 0; c < k; ++c) chi[c] = F.mul(F.mul(w[c], d), F.inv(G.class_size(c) % l));
        std::vector<Cyclotomic> row(k);
        for (std::size_t c = 0; c < k; ++c) {
            u64 o = G.class_order(c);
            u64 zo = powmod(z, e / o, l);
            u64 oinv = F.inv(o % l);
            std::vector<i64> mult(o);
            u64 total = 0;
            for (u64 j = 0; j < o; ++j) {
                // m_j = (1/o) sum_s chi(g^s) z_o^{-js}
                u64 step = F.inv(powmod(zo, j, l)), t = 1, s_acc = 0;
                for (u64 s = 0; s < o; ++s) {
                    s_acc = F.add(s_acc, F.mul(chi[powers[c][s]], t));
                    t = F.mul(t, step);
                }
                u64 m = F.mul(s_acc, oinv);
                if (m > d) throw SplitFailure("multiplicity out of range");
                mult[j] = static_cast<i64>(m);
                total += m;
            }
            if (total != d) throw SplitFailure("multiplicities do not sum to the degree");
            row[c] = Cyclotomic::from_exponents(o, mult);
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace

CharacterTable dixon_table(const GroupRef& G, std::size_t max_classes) {
    const std::size_t k = G->class_count();
    if (k > max_classes)
        throw BudgetExceeded("character table: " + std::to_string(k) + " classes exceed the limit " +
                             std::to_string(max_classes));
    CharacterTable T;
    T.G_ = G;
    T.e_ = G->exponent();
    ClassMatrices CM(*G);
    u64 l = 0;
    std::vector<std::vector<Cyclotomic>> rows;
    for (int attempt = 0;; ++attempt) {
        l = dixon_prime(T.e_, G->order(), l);
        try {
            rows = lift_table(*G, CM, l, T.e_);
            break;
        } catch (const SplitFailure& err) {
            if (attempt == 4) throw std::logic_error(std::string("character table construction failed: ") + err.what());
        }
    }
    T.ell_ = l;
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (std::size_t i = 0; i < rows.size(); ++i) keys.emplace_back(row_key(rows[i]), i);
    auto deg = [&](std::size_t i) { return rows[i][0].rational_value(); };
    auto trivial = [&](std::size_t i) {
        for (const auto& v : rows[i])
            if (v != Cyclotomic(1)) return false;
        return true;
    };
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        bool ta = trivial(a.second), tb = trivial(b.second);
        if (ta != tb) return ta;
        auto da = deg(a.second), db = deg(b.second);
        if (da != db) return da < db;
        return a.first < b.first;
    });
    for (auto& [key, i] : keys) {
        T.index_[key] = T.chi_.size();
        T.deg_.push_back(deg(i).get_num().get_ui());
        T.chi_.push_back(std::move(rows[i]));
    }
    T.inv_class_.resize(k);
    for (std::size_t c = 0; c < k; ++c) T.inv_class_[c] = G->class_of(G->inv(G->class_rep(c)));
    return T;
}

// ---------------------------------------------------------------------------
// Inner products and decomposition

namespace {

bool all_integral(const std::vector<Cyclotomic>& v, u64& E) {
    for (const auto& x : v) {
        if (!x.is_integral()) return false;
        E = std::lcm(E, x.conductor());
    }
    return true;
}

// sum_i w_i a_i conj(b_i)
Cyclotomic weighted_sum(const std::vector<u64>& w, const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
    u64 E = 1;
    if (all_integral(a, E) && all_integral(b, E)) {
        CycloAccumulator acc(E);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero() && !b[i].is_zero()) acc.add_product(a[i], b[i], static_cast<i64>(w[i]), true);
        return acc.value();
    }
    Cyclotomic s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * b[i].conj()).scaled(mpq_class(w[i]));
    return s;
}

}  // namespace

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
    const GroupData& G = *a.group;
    std::vector<u64> w(G.class_count());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = G.class_size(c);
    return weighted_sum(w, a.values, b.values).scaled(mpq_class(1, G.order()));
}

mpq_class inner_product_q(const ClassFunction& a, const ClassFunction& b) {
    return inner_product(a, b).rational_value();
}

std::vector<mpq_class> CharacterTable::decompose(const ClassFunction& f) const {
    std::vector<mpq_class> out;
    for (std::size_t i = 0; i < rows(); ++i) out.push_back(inner_product_q(f, character(i)));
    return out;
}

std::string CharacterTable::export_text() const {
    const GroupData& G = *G_;
    std::ostringstream os;
    os << "selfnorm-character-table " << kTableFormatVersion << "\n";
    os << "group " << G.name() << "\n";
    os << "order " << G.order() << "\n";
    os << "exponent " << e_ << "\n";
    os << "classes " << classes() << "\n";
    for (std::size_t c = 0; c < classes(); ++c)
        os << "class " << c << " order " << G.class_order(c) << " size " << G.class_size(c) << " rep "
           << to_literal(G.element(G.class_rep(c))) << "\n";
    os << "rows " << rows() << "\n";
    for (std::size_t i = 0; i < rows(); ++i) {
        os << "row " << i << " degree " << deg_[i];
        for (const auto& v : chi_[i]) os << "\t" << v.serialize();
        os << "\n";
    }
    return os.str();
}

std::map<u32, Cyclotomic> central_character(const CharacterTable& T, std::size_t row) {
    const GroupData& G = *T.group();
    std::map<u32, Cyclotomic> out;
    mpq_class inv_deg(1, T.degree(row));
    for (u32 z : G.center()) out[z] = T.value(row, G.class_of(z)).scaled(inv_deg);
    return out;
}

// ---------------------------------------------------------------------------
// Induction and restriction

ClassFunction induce(const GroupRef& G, const Subgroup& H, const std::vector<Cyclotomic>& f) {
    if (f.size() != H.order()) throw InvalidArgument("induce: one value per subgroup element expected");
    std::vector<std::vector<Cyclotomic>> bucket(G->class_count());
    for (std::size_t i = 0; i < H.order(); ++i) bucket[G->class_of(H.elems[i])].push_back(f[i]);
    ClassFunction out{G, std::vector<Cyclotomic>(G->class_count())};
    for (std::size_t c = 0; c < bucket.size(); ++c) {
        if (bucket[c].empty()) continue;
        u64 E = 1;
        Cyclotomic s;
        if (all_integral(bucket[c], E)) {
            CycloAccumulator acc(E);
            for (const auto& v : bucket[c]) acc.add(v);
            s = acc.value();
        } else {
            for (const auto& v : bucket[c]) s += v;
        }
        out.values[c] = s.scaled(mpq_class(G->centralizer_order(c), H.order()));
    }
    return out;
}

ClassFunction induce_roots(const GroupRef& G, const Subgroup& H, u64 m, const std::vector<u64>& exps) {
    if (exps.size() != H.order()) throw InvalidArgument("induce_roots: one exponent per subgroup element expected");
    std::vector<CycloAccumulator> acc(G->class_count(), CycloAccumulator(m));
    std::vector<bool> hit(G->class_count(), false);
    for (std::size_t i = 0; i < H.order(); ++i) {
        auto c = G->class_of(H.elems[i]);
        acc[c].add_root(static_cast<i64>(exps[i] % m), 1);
        hit[c] = true;
    }
    ClassFunction out{G, std::vector<Cyclotomic>(G->class_count())};
    for (std::size_t c = 0; c < acc.size(); ++c)
        if (hit[c]) out.values[c] = acc[c].value().scaled(mpq_class(G->centralizer_order(c), H.order()));
    return out;
}

std::vector<Cyclotomic> restrict_to(const ClassFunction& f, const Subgroup& H) {
    std::vector<Cyclotomic> out;
    out.reserve(H.order());
    for (u32 h : H.elems) out.push_back(f.values[f.group->class_of(h)]);
    return out;
}

Cyclotomic subgroup_inner_product(const Subgroup& H, const std::vector<Cyclotomic>& a,
                                  const std::vector<Cyclotomic>& b) {
    std::vector<u64> w(a.size(), 1);
    return weighted_sum(w, a, b).scaled(mpq_class(1, H.order()));
}

std::vector<std::size_t> class_fusion(const GroupData& S, const GroupData& G) {
    std::vector<std::size_t> out(S.class_count());
    for (std::size_t c = 0; c < out.size(); ++c) {
        u32 x = G.find(S.element(S.class_rep(c)));
        if (x == kNoElement) throw InvalidArgument("class_fusion: " + S.name() + " is not contained in " + G.name());
        out[c] = G.class_of(x);
    }
    return out;
}

std::vector<Constituent> restrict_and_decompose(const CharacterTable& sub, const CharacterTable& ambient,
                                                std::size_t row) {
    auto fus = class_fusion(*sub.group(), *ambient.group());
    ClassFunction res{sub.group(), {}};
    for (std::size_t c = 0; c < fus.size(); ++c) res.values.push_back(ambient.value(row, fus[c]));
    std::vector<Constituent> out;
    auto mult = sub.decompose(res);
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i].get_den() != 1 || mult[i] < 0)
            throw std::logic_error("restriction has a non-integral multiplicity");
        if (mult[i] != 0) out.push_back({i, mult[i].get_num().get_ui()});
    }
    return out;
}

}  // namespace selfnorm

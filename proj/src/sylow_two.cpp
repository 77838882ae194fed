#include "selfnorm/sylow_two.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace selfnorm {

namespace {

u64 q_minus_eps(u64 q, int eps) { return eps == 1 ? q - 1 : q + 1; }

FieldRef field_for(u64 q, int eps) {
    auto [p, a] = prime_power(q);
    return FiniteField::get(p, eps == 1 ? a : 2 * a);
}

void require_odd(u64 q, const char* what) {
    prime_power(q);
    if (q % 2 == 0) throw InvalidArgument(std::string(what) + " needs q odd (got q = " + std::to_string(q) + ")");
}

mpz_class mpz_two_part(const mpz_class& x) {
    if (x == 0) throw InvalidArgument("2-part of zero");
    mp_bitcnt_t k = mpz_scan1(x.get_mpz_t(), 0);
    mpz_class r = 1;
    r <<= k;
    return r;
}

Matrix embed_block(const Matrix& b, int n, int offset) {
    Matrix m = Matrix::identity(b.F, n);
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) m(offset + i, offset + j) = b(i, j);
    return m;
}

const std::vector<Matrix>& s1_generators(u64 q, int eps) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::vector<Matrix>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({q, eps});
    if (it != memo.end()) return it->second;
    auto G = GroupData::shared(GroupSpec::make(eps == 1 ? Kind::GL : Kind::GU, 2, q));
    Subgroup P = sylow_2_generic(*G);
    std::vector<Matrix> gens;
    for (u32 g : P.gens) gens.push_back(G->element(g));
    return memo.emplace(std::make_pair(q, eps), std::move(gens)).first->second;
}

u64 closure_order(const std::vector<Matrix>& gens, const FieldRef& F, int n, u64 budget) {
    return GroupData::closure_size(F, n, gens, budget);
}

}  // namespace

TwoAdicExpansion two_adic(u64 n) {
    if (n == 0) throw InvalidArgument("two_adic needs n >= 1");
    TwoAdicExpansion e;
    for (int b = 63; b >= 0; --b)
        if ((n >> b) & 1) e.r.push_back(b);
    return e;
}

std::vector<Matrix> s_r_generators(int r, u64 q, int eps) {
    require_odd(q, "S_r construction");
    if (r < 0 || r > 6) throw InvalidArgument("s_r_generators supports 0 <= r <= 6");
    FieldRef F = field_for(q, eps);
    if (r == 0) return {Matrix::diag(F, {F->root_of_unity(two_part(q_minus_eps(q, eps)))})};
    if (r == 1) return s1_generators(q, eps);
    std::vector<Matrix> prev = s_r_generators(r - 1, q, eps);
    const int h = 1 << (r - 1), n = 1 << r;
    std::vector<Matrix> gens;
    for (const auto& s : prev) gens.push_back(embed_block(s, n, 0));
    Matrix swap(F, n);
    for (int i = 0; i < h; ++i) {
        swap(i, h + i) = 1;
        swap(h + i, i) = 1;
    }
    gens.push_back(swap);
    return gens;
}

mpz_class s_r_order(int r, u64 q, int eps) {
    require_odd(q, "S_r construction");
    if (r == 0) return mpz_class(static_cast<unsigned long>(two_part(q_minus_eps(q, eps))));
    if (r == 1) return mpz_class(static_cast<unsigned long>(closure_order(s1_generators(q, eps), field_for(q, eps), 2, kEnumerationBudget)));
    mpz_class s = s_r_order(r - 1, q, eps);
    return 2 * s * s;
}

mpz_class predicted_normalizer_order(int n, u64 q, int eps) {
    require_odd(q, "Carter-Fong normaliser order");
    mpz_class o = gl_order_two_part(n, q, eps);
    u64 odd = odd_part(q_minus_eps(q, eps));
    for (int i = 0; i < two_adic(n).t(); ++i) o *= static_cast<unsigned long>(odd);
    return o;
}

SylowDecomposition build_sylow(int n, u64 q, int eps, u64 closure_budget) {
    require_odd(q, "build_sylow");
    if (n < 1) throw InvalidArgument("build_sylow needs n >= 1");
    SylowDecomposition d;
    d.n = n;
    d.q = q;
    d.eps = eps;
    d.parts = two_adic(n);
    FieldRef F = field_for(q, eps);
    d.lambda = F->root_of_unity(odd_part(q_minus_eps(q, eps)));
    d.order = 1;
    int offset = 0;
    for (int r : d.parts.r) {
        for (const auto& s : s_r_generators(r, q, eps)) d.generators.push_back(embed_block(s, n, offset));
        d.order *= s_r_order(r, q, eps);
        Matrix z = Matrix::identity(F, n);
        for (int i = 0; i < (1 << r); ++i) z(offset + i, offset + i) = d.lambda;
        d.z_generators.push_back(z);
        offset += 1 << r;
    }
    d.order_method = "wreath-formula";
    if (d.order <= closure_budget && n <= 8) {
        mpz_class c = static_cast<unsigned long>(closure_order(d.generators, F, n, closure_budget));
        if (c != d.order)
            throw std::logic_error("Sylow construction for GL_" + std::to_string(n) + " closes to order " + c.get_str() +
                                   ", the wreath formula gives " + d.order.get_str());
        d.order_method = "closure";
    }
    mpz_class expect = gl_order_two_part(n, q, eps);
    if (d.order != expect)
        throw std::logic_error("Sylow construction has order " + d.order.get_str() + " but the 2-part of the group order is " +
                               expect.get_str());
    d.predicted_normalizer_order = predicted_normalizer_order(n, q, eps);
    return d;
}

mpz_class index_two_part(int m, u64 q, int eps) {
    require_odd(q, "index_two_part");
    if (m < 1) throw InvalidArgument("index_two_part needs m >= 1");
    mpz_class a = gl_order(m, q, eps);
    return mpz_two_part(gl_order(2 * m, q, eps) / (a * a));
}

bool index_two_part_check(int m, u64 q, int eps) {
    mpz_class expect = 1;
    expect <<= static_cast<mp_bitcnt_t>(two_adic(m).t());
    return index_two_part(m, q, eps) == expect;
}

WreathOrderCheck wreath_order_check(int r, u64 q, int eps) {
    require_odd(q, "wreath_order_check");
    WreathOrderCheck w;
    w.r = r;
    FieldRef F = field_for(q, eps);
    auto closed = [&](int k) -> mpz_class {
        if (k == 0) return s_r_order(0, q, eps);
        return static_cast<unsigned long>(closure_order(s_r_generators(k, q, eps), F, 1 << k, kEnumerationBudget));
    };
    if (r + 1 <= 2) {
        w.s_r = closed(r);
        w.s_r1 = closed(r + 1);
        w.method = "closure of S_" + std::to_string(r) + " and S_" + std::to_string(r + 1);
    } else {
        w.s_r = r <= 2 ? closed(r) : gl_order_two_part(1 << r, q, eps);
        w.s_r1 = gl_order_two_part(1 << (r + 1), q, eps);
        w.method = std::string(r <= 2 ? "closure of S_" + std::to_string(r) : "2-part of |GL_" + std::to_string(1 << r) + "|") +
                   ", 2-part of |GL_" + std::to_string(1 << (r + 1)) + "| for S_" + std::to_string(r + 1);
    }
    w.holds = w.s_r1 == 2 * w.s_r * w.s_r;
    return w;
}

bool psl_is_simple(int n, u64 q, int eps) {
    prime_power(q);
    if (n < 2) return false;
    if (n == 2) return q >= 4;
    if (n == 3 && eps == -1 && q == 2) return false;
    return true;
}

Sn2sVerdict sn2s_simple(int n, u64 q, int eps) {
    require_odd(q, "the self-normalising Sylow criterion");
    if (!psl_is_simple(n, q, eps))
        throw InvalidArgument("PSL_" + std::to_string(n) + "^" + (eps == 1 ? "+" : "-") + "(" + std::to_string(q) +
                              ") is not simple");
    Sn2sVerdict v;
    auto e = two_adic(n);
    const u64 qe = q_minus_eps(q, eps);
    const bool pow2 = e.t() == 1 && e.r[0] >= 2;
    if (pow2) {
        v.holds = true;
        v.clause = "i";
    } else if (odd_part(qe) == 1) {
        v.holds = true;
        v.clause = "ii";
    } else if (e.t() == 2 && odd_part(qe) == odd_part(std::gcd(static_cast<u64>(n), qe))) {
        v.holds = true;
        v.clause = "iii";
    }
    return v;
}

QDescription QDescription::parse(const std::string& s) {
    QDescription Q;
    if (s.empty() || s == "trivial" || s == "triv") return Q;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t bar = s.find('|', pos);
        std::string item = s.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        if (item == "graph") {
            Q.graph = true;
        } else if (item.rfind("field:m=", 0) == 0) {
            try {
                std::size_t used = 0;
                long m = std::stol(item.substr(8), &used);
                if (used != item.size() - 8 || m < 1) throw InvalidArgument("");
                Q.field_powers.push_back(static_cast<unsigned>(m));
            } catch (const std::exception&) {
                throw InvalidArgument("malformed field power in Q item '" + item + "' at position " + std::to_string(pos));
            }
        } else if (item.rfind("diag:", 0) == 0) {
            Q.diagonal.push_back(parse_literal(item.substr(5)));
        } else {
            throw InvalidArgument("unknown Q item '" + item + "' at position " + std::to_string(pos));
        }
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    return Q;
}

std::string QDescription::str() const {
    std::vector<std::string> items;
    if (graph) items.push_back("graph");
    for (unsigned m : field_powers) items.push_back("field:m=" + std::to_string(m));
    for (const auto& d : diagonal) items.push_back("diag:" + to_literal(d));
    if (items.empty()) return "trivial";
    std::string out = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) out += "|" + items[i];
    return out;
}

void validate_q(const QDescription& Q, u64 q, int eps) {
    auto [p, a0] = prime_power(q);
    (void)p;
    const unsigned a = eps == 1 ? a0 : 2 * a0;
    if (Q.graph && eps == -1)
        throw InvalidArgument("malformed Q: a graph automorphism is declared for a unitary group (use the involutary field automorphism)");
    for (unsigned m : Q.field_powers)
        if (m == 0 || a % m != 0 || !is_power_of_two(a / m))
            throw InvalidArgument("malformed Q: field power m = " + std::to_string(m) + " needs m | " + std::to_string(a) +
                                  " with a/m a power of 2");
}

unsigned field_part_m0(const QDescription& Q, u64 q, int eps) {
    validate_q(Q, q, eps);
    const unsigned a = (eps == 1 ? 1u : 2u) * prime_power(q).second;
    unsigned m0 = a;
    for (unsigned m : Q.field_powers) m0 = std::gcd(m0, m);
    return m0;
}

Sn2sQVerdict sn2s_with_Q(int n, u64 q, int eps, const QDescription& Q) {
    const unsigned m0 = field_part_m0(Q, q, eps);
    auto [p, a0] = prime_power(q);
    const unsigned a = eps == 1 ? a0 : 2 * a0;
    Sn2sQVerdict v;
    std::ostringstream why;
    auto s = sn2s_simple(n, q, eps);
    if (s.holds) {
        v.conditions.push_back(1);
        why << "(1) simple-group criterion clause " << s.clause << "; ";
    }
    bool c2 = eps == 1 ? Q.graph : (a / m0) % 2 == 0;
    if (c2) {
        v.conditions.push_back(2);
        why << (eps == 1 ? "(2) graph automorphism in Q; " : "(2) involutary field automorphism in Q; ");
    }
    if (eps == 1 && is_power_of_two(a) && odd_part(p - 1) == 1 && m0 == 1) {
        v.conditions.push_back(3);
        why << "(3) field automorphism of order " << a << " with (p-1) a 2-power; ";
    }
    if (eps == 1 && is_power_of_two(a) && p == 3 && a >= 2 && 2 % m0 == 0) {
        v.conditions.push_back(4);
        why << "(4) p = 3 with a field automorphism of order " << a / 2 << "; ";
    }
    if (eps == 1 && two_adic(n).t() == 2) {
        for (unsigned m = m0; m <= a; m += m0) {
            if (a % m) continue;
            u64 pm = ipow(p, m) - 1;
            if (odd_part(pm) == odd_part(std::gcd(static_cast<u64>(n), pm))) {
                v.conditions.push_back(5);
                why << "(5) subfield GF(" << p << "^" << m << ") balances the two blocks; ";
                break;
            }
        }
    }
    v.holds = !v.conditions.empty();
    v.detail = why.str();
    if (!v.detail.empty()) v.detail.resize(v.detail.size() - 2);
    return v;
}

bool CarterFongCheck::ok() const {
    return sylow_order == formula_two_part && mpz_class(static_cast<unsigned long>(normalizer_order)) == predicted &&
           factorization_ok;
}

CarterFongCheck carter_fong_brute(int n, u64 q, int eps, u64 budget) {
    GroupSpec spec = GroupSpec::make(eps == 1 ? Kind::GL : Kind::GU, n, q);
    CarterFongCheck c;
    c.spec = spec.str();
    auto G = GroupData::shared(spec, budget);
    SylowDecomposition d = build_sylow(n, q, eps);
    std::vector<u32> pg;
    for (const auto& g : d.generators) {
        u32 i = G->find(g);
        if (i == kNoElement) throw std::logic_error("Sylow generator outside " + c.spec);
        pg.push_back(i);
    }
    Subgroup P = subgroup_generated(*G, pg);
    c.sylow_order = static_cast<unsigned long>(P.order());
    c.formula_two_part = gl_order_two_part(n, q, eps);
    Subgroup N = normalizer(*G, P);
    c.normalizer_order = N.order();
    c.predicted = d.predicted_normalizer_order;

    std::vector<u32> zg;
    for (const auto& z : d.z_generators) zg.push_back(G->find(z));
    Subgroup Z = subgroup_generated(*G, zg);
    c.factorization_ok = true;
    for (u32 g : N.elems) {
        bool found = false;
        for (u32 z : Z.elems)
            if (P.contains(G->mul(g, G->inv(z)))) {
                found = true;
                break;
            }
        if (!found) {
            c.factorization_ok = false;
            break;
        }
    }

    // P = P~ cap SL_n^eps(q) has the same normaliser in GL_n^eps(q)
    std::vector<u32> sl;
    for (u32 x : P.elems)
        if (det(G->element(x)) == 1) sl.push_back(x);
    Subgroup Psl = subgroup_from_elements(*G, sl);
    c.cf1_ok = normalizer(*G, Psl) == N;
    return c;
}

}  // namespace selfnorm

#include "selfnorm/gggr.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "selfnorm/matrix.hpp"

namespace selfnorm {

std::string NilpotentData::partition_str() const {
    std::string s;
    for (std::size_t i = 0; i < partition.size(); ++i) s += (i ? "," : "") + std::to_string(partition[i]);
    return s;
}

std::vector<int> jordan_cocharacter(const std::vector<int>& partition) {
    std::vector<int> w;
    for (int d : partition) {
        if (d <= 0) throw InvalidArgument("partition parts must be positive");
        for (int k = 0; k < d; ++k) w.push_back(d - 1 - 2 * k);
    }
    std::stable_sort(w.begin(), w.end(), std::greater<int>());
    return w;
}

std::vector<int> parse_partition(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        if (cur.size() > 6 || !std::all_of(cur.begin(), cur.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw InvalidArgument("bad partition part '" + cur + "'");
        int v = std::stoi(cur);
        if (v <= 0) throw InvalidArgument("bad partition part '" + cur + "'");
        out.push_back(v);
        cur.clear();
    };
    for (char c : s) {
        if (c == ',' || c == ' ') flush();
        else cur += c;
    }
    flush();
    if (out.empty()) throw InvalidArgument("empty partition");
    std::sort(out.begin(), out.end(), std::greater<int>());
    return out;
}

NilpotentData nilpotent_data(const FieldRef& F, const std::vector<int>& partition) {
    NilpotentData nil;
    nil.partition = partition;
    std::sort(nil.partition.begin(), nil.partition.end(), std::greater<int>());
    struct Vec {
        int weight, block, pos;
    };
    std::vector<Vec> vs;
    for (int b = 0; b < static_cast<int>(nil.partition.size()); ++b)
        for (int k = 0; k < nil.partition[b]; ++k) vs.push_back({nil.partition[b] - 1 - 2 * k, b, k});
    std::stable_sort(vs.begin(), vs.end(), [](const Vec& x, const Vec& y) { return x.weight > y.weight; });
    const int n = static_cast<int>(vs.size());
    std::map<std::pair<int, int>, int> where;
    for (int i = 0; i < n; ++i) {
        nil.weights.push_back(vs[i].weight);
        nil.basis.emplace_back(vs[i].block, vs[i].pos);
        where[{vs[i].block, vs[i].pos}] = i;
    }
    // e maps basis vector (b, k+1) to (b, k)
    nil.e = Matrix(F, n);
    for (int i = 0; i < n; ++i) {
        auto it = where.find({vs[i].block, vs[i].pos + 1});
        if (it != where.end()) nil.e(i, it->second) = 1;
    }
    nil.u = nil.e + Matrix::identity(F, n);
    return nil;
}

NilpotentData with_nilpotent(const NilpotentData& nil, const Matrix& e) {
    const int n = e.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (e(i, j) && nil.weights[i] - nil.weights[j] != 2)
                throw InvalidArgument("nilpotent is not of weight 2 for this cocharacter");
    NilpotentData out = nil;
    out.e = e;
    out.u = e + Matrix::identity(e.F, n);
    return out;
}

int weight_dimension(const std::vector<int>& w, int level) {
    int d = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[j] - w[k] >= level) ++d;
    return d;
}

bool in_weight_subgroup(const std::vector<int>& w, const Matrix& M, int level) {
    const int n = M.n;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Elem x = j == k ? M.F->sub(M(j, k), 1) : M(j, k);
            if (x && w[j] - w[k] < level) return false;
        }
    return true;
}

std::vector<Matrix> weight_subgroup_elements(const FieldRef& F, const std::vector<int>& w, int level, u64 budget) {
    const int n = static_cast<int>(w.size());
    std::vector<std::pair<int, int>> pos;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (w[j] - w[k] >= level) pos.emplace_back(j, k);
    u64 total = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (total > budget / F->q()) throw BudgetExceeded("weight subgroup over budget");
        total *= F->q();
    }
    std::vector<Matrix> out;
    out.reserve(total);
    for (u64 code = 0; code < total; ++code) {
        Matrix M = Matrix::identity(F, n);
        u64 c = code;
        for (auto [j, k] : pos) {
            M(j, k) = static_cast<Elem>(c % F->q());
            c /= F->q();
        }
        out.push_back(std::move(M));
    }
    return out;
}

Matrix kawanaka_map(const Matrix& x) {
    Matrix X = x - Matrix::identity(x.F, x.n);
    Matrix P = X;
    for (int k = 1; k < x.n; ++k) P = P * X;
    if (std::any_of(P.a.begin(), P.a.end(), [](Elem v) { return v != 0; }))
        throw InvalidArgument("kawanaka_map: element is not unipotent");
    return X;
}

u64 phi_u_exponent(const NilpotentData& nil, const Matrix& x) {
    if (!in_weight_subgroup(nil.weights, x, 2)) throw InvalidArgument("phi_u: element outside U(lambda, 2)");
    const FiniteField& F = *x.F;
    Elem s = 0;
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            if (nil.e(i, j)) s = F.add(s, F.mul(nil.e(i, j), i == j ? F.sub(x(i, j), 1) : x(i, j)));
    return F.trace_to_prime(s);
}

Cyclotomic phi_u(const NilpotentData& nil, const Matrix& x) {
    return Cyclotomic::root_of_unity(nil.e.F->p(), static_cast<i64>(phi_u_exponent(nil, x)));
}

Subgroup gggr_subgroup(const GroupData& G, const NilpotentData& nil, u64 budget) {
    std::vector<u32> idx;
    for (const Matrix& M : weight_subgroup_elements(G.field(), nil.weights, 2, budget)) {
        u32 i = G.find(M);
        if (i == kNoElement) throw InvalidArgument("U(lambda, 2) is not contained in " + G.name());
        idx.push_back(i);
    }
    return subgroup_from_elements(G, std::move(idx));
}

ClassFunction gggr_character(const GroupRef& G, const NilpotentData& nil, u64 budget) {
    if (G->field()->p() == 2) throw InvalidArgument("generalised Gelfand-Graev characters need p odd");
    const int d1 = weight_dimension(nil.weights, 1), d2 = weight_dimension(nil.weights, 2);
    if ((d1 - d2) % 2 != 0) throw std::logic_error("[U(lambda,1) : U(lambda,2)] is not an even power of q");
    Subgroup U2 = gggr_subgroup(*G, nil, budget);
    std::vector<u64> exps;
    exps.reserve(U2.order());
    for (u32 h : U2.elems) exps.push_back(phi_u_exponent(nil, G->element(h)));
    ClassFunction f = induce_roots(G, U2, G->field()->p(), exps);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), G->field()->q(), static_cast<unsigned long>((d1 - d2) / 2));
    for (auto& v : f.values) v = v.scaled(mpq_class(1) / mpq_class(scale));
    return f;
}

std::vector<u64> gggr_multiplicities(const CharacterTable& T, const ClassFunction& gamma) {
    std::vector<u64> out;
    for (const mpq_class& m : T.decompose(gamma)) {
        if (m.get_den() != 1 || m < 0) throw std::logic_error("GGGR multiplicity " + m.get_str() + " is not a non-negative integer");
        out.push_back(m.get_num().get_ui());
    }
    return out;
}

namespace {

bool same_jordan_type(const Matrix& a, const Matrix& b) {
    // ranks of powers of the nilpotent parts determine the Jordan type
    Matrix x = a - Matrix::identity(a.F, a.n), y = b - Matrix::identity(b.F, b.n);
    Matrix px = x, py = y;
    for (int k = 1; k <= a.n; ++k) {
        if (rank(px) != rank(py)) return false;
        px = px * x;
        py = py * y;
    }
    return true;
}

}  // namespace

std::optional<NilpotentData> nilpotent_in_class(const GroupData& G, const NilpotentData& nil, u32 target,
                                                std::optional<Elem> scale_by, u64 budget) {
    const u32 cls = G.class_of(target);
    const Matrix t = G.element(target);
    auto accept = [&](const Matrix& e) -> bool {
        Matrix u = e + Matrix::identity(e.F, e.n);
        u32 i = G.find(u);
        return i != kNoElement && G.class_of(i) == cls && same_jordan_type(u, t);
    };
    if (scale_by) {
        Matrix e = scale(nil.e, *scale_by);
        if (accept(e)) return with_nilpotent(nil, e);
    }
    const FieldRef& F = G.field();
    const int n = nil.e.n;
    std::vector<std::pair<int, int>> pos;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (nil.weights[j] - nil.weights[k] == 2) pos.emplace_back(j, k);
    u64 total = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (total > budget / F->q()) throw BudgetExceeded("search of g(lambda, 2) over budget");
        total *= F->q();
    }
    for (u64 code = 0; code < total; ++code) {
        Matrix e(F, n);
        u64 c = code;
        for (auto [j, k] : pos) {
            e(j, k) = static_cast<Elem>(c % F->q());
            c /= F->q();
        }
        if (accept(e)) return with_nilpotent(nil, e);
    }
    return std::nullopt;
}

GggrGaloisCheck verify_gggr_galois(const GroupRef& G, const NilpotentData& nil, const GaloisMap& gamma, u64 budget) {
    const u64 p = G->field()->p();
    if (gamma.e % p != 0) throw InvalidArgument("the Galois map must act on the p-th roots of unity");
    GggrGaloisCheck out;
    out.k = ((gamma.k % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p);
    if (out.k == 0) throw InvalidArgument("gcd(k, p) must be 1");
    const u32 ui = G->find(nil.u);
    if (ui == kNoElement) throw InvalidArgument("u is not an element of " + G->name());
    const u32 target = G->power(ui, out.k);
    auto other = nilpotent_in_class(*G, nil, target, G->field()->from_int(out.k), budget);
    if (!other) throw std::logic_error("no representative of the class of u^k in g(lambda, 2)");
    out.e_power = other->e;
    out.method = other->e == scale(nil.e, G->field()->from_int(out.k)) ? "scaled" : "search";
    ClassFunction a = gggr_character(G, nil, budget);
    ClassFunction b = gggr_character(G, *other, budget);
    out.holds = true;
    for (std::size_t c = 0; c < a.values.size(); ++c)
        if (galois_apply(a.values[c], gamma) != b.values[c]) out.holds = false;
    return out;
}

ValueFieldReport gggr_value_field(const ClassFunction& gamma, int n, u64 q, int eps) {
    ValueFieldReport r;
    auto [p, a] = prime_power(q);
    if (p == 2) throw InvalidArgument("value field check needs p odd");
    r.eta = p % 4 == 1 ? 1 : -1;
    const u64 qe = eps == 1 ? q - 1 : q + 1;
    const u64 g = std::gcd(static_cast<u64>(n), qe);
    r.integer_claim = a % 2 == 0 || n % 2 == 1 || (static_cast<u64>(n) / g) % 2 == 0;
    r.quadratic_ok = true;
    r.all_integers = true;
    for (const Cyclotomic& v : gamma.values) {
        if (!quadratic_field_member(v, r.eta, p)) r.quadratic_ok = false;
        if (!v.is_rational() || v.rational_value().get_den() != 1) r.all_integers = false;
    }
    return r;
}

}  // namespace selfnorm

#include "selfnorm/group_data.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>

namespace selfnorm {

namespace {

constexpr int kMaxDegree = 8;
constexpr const char* kCacheMagic = "selfnorm-group-table";
constexpr int kCacheVersion = 1;

u64 hash_entries(const Elem* m, std::size_t nn) {
    u64 h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < nn; ++i) {
        h ^= m[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 29;
    return h;
}

u64 splitmix(u64& s) {
    u64 z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Hermitian product sum conj(x_i) y_i over GF(q^2) with conj = q-th power.
Elem hermitian(const FiniteField& F, u64 q, const std::vector<Elem>& x, const std::vector<Elem>& y) {
    Elem s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(F.pow(x[i], static_cast<i64>(q)), y[i]));
    return s;
}

}  // namespace

Matrix random_unitary(const FieldRef& F2, int n, bool special, u64& state) {
    const FiniteField& F = *F2;
    const u64 Q = F.q();
    u64 q = 1;
    while (q * q < Q) ++q;
    std::vector<std::vector<Elem>> cols;
    while (static_cast<int>(cols.size()) < n) {
        std::vector<Elem> v(n);
        for (auto& x : v) x = static_cast<Elem>(splitmix(state) % Q);
        for (const auto& u : cols) {
            Elem c = hermitian(F, q, u, v);
            for (int i = 0; i < n; ++i) v[i] = F.sub(v[i], F.mul(c, u[i]));
        }
        Elem nv = hermitian(F, q, v, v);
        if (nv == 0) continue;
        // scale by c with c^(q+1) = 1/nv; 1/nv lies in GF(q)* = <g^(q+1)>
        u64 L = F.log(F.inv(nv));
        Elem c = F.exp(static_cast<i64>(L / (q + 1)));
        for (auto& x : v) x = F.mul(x, c);
        cols.push_back(std::move(v));
    }
    Matrix M(F2, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) M(i, j) = cols[j][i];
    if (special) {
        Elem d = F.inv(det(M));
        for (int i = 0; i < n; ++i) M(i, 0) = F.mul(M(i, 0), d);
    }
    return M;
}

std::vector<Matrix> standard_generators(const GroupSpec& s) {
    GroupSpec b = s.base();
    FieldRef F = b.field();
    std::vector<Matrix> gens;
    if (!b.unitary()) {
        if (b.kind == Kind::GL) {
            Matrix d = Matrix::identity(F, b.n);
            d(0, 0) = F->generator();
            gens.push_back(d);
        }
        for (int i = 0; i + 1 < b.n; ++i)
            for (unsigned l = 0; l < F->k(); ++l) {
                Matrix x = Matrix::identity(F, b.n);
                x(i, i + 1) = F->exp(l);
                gens.push_back(x);
                Matrix y = Matrix::identity(F, b.n);
                y(i + 1, i) = F->exp(l);
                gens.push_back(y);
            }
        return gens;
    }
    throw InvalidArgument("standard_generators: unitary groups use random_unitary");
}

std::string GroupData::name() const {
    if (spec_) return spec_->str();
    return "group<" + F_->name() + "," + std::to_string(n_) + ">";
}

Matrix GroupData::element(u32 i) const {
    Matrix m(F_, n_);
    std::copy(raw(i), raw(i) + nn_, m.a.begin());
    return m;
}

void GroupData::mul_raw(const Elem* x, const Elem* y, Elem* out) const {
    const FiniteField& F = *F_;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Elem s = 0;
            for (int k = 0; k < n_; ++k) {
                Elem a = x[i * n_ + k], b = y[k * n_ + j];
                if (a && b) s = F.add(s, F.mul(a, b));
            }
            out[i * n_ + j] = s;
        }
}

void GroupData::canon_raw(Elem* m) const {
    if (scalars_.size() <= 1) return;
    std::size_t f = 0;
    while (f < nn_ && m[f] == 0) ++f;
    if (f == nn_) return;
    const FiniteField& F = *F_;
    Elem best = 0, best_v = 0;
    for (Elem c : scalars_) {
        Elem v = F.mul(c, m[f]);
        if (best == 0 || v < best_v) best = c, best_v = v;
    }
    if (best != 1)
        for (std::size_t i = 0; i < nn_; ++i) m[i] = F.mul(m[i], best);
}

Matrix GroupData::canonical(const Matrix& m) const {
    if (m.n != n_ || m.F != F_) throw InvalidArgument("matrix does not belong to " + name());
    Matrix c = m;
    canon_raw(c.a.data());
    return c;
}

u32 GroupData::lookup(const Elem* m) const {
    const std::size_t mask = table_.size() - 1;
    std::size_t h = hash_entries(m, nn_) & mask;
    for (;;) {
        u32 e = table_[h];
        if (e == kNoElement) return kNoElement;
        if (std::memcmp(raw(e), m, nn_ * sizeof(Elem)) == 0) return e;
        h = (h + 1) & mask;
    }
}

void GroupData::rehash(std::size_t cap) {
    table_.assign(cap, kNoElement);
    const std::size_t mask = cap - 1;
    for (u32 e = 0; e < order_; ++e) {
        std::size_t h = hash_entries(raw(e), nn_) & mask;
        while (table_[h] != kNoElement) h = (h + 1) & mask;
        table_[h] = e;
    }
}

u32 GroupData::insert(const Elem* m) {
    u32 e = lookup(m);
    if (e != kNoElement) return e;
    data_.insert(data_.end(), m, m + nn_);
    ++order_;
    if (2 * order_ > table_.size()) {
        rehash(table_.size() * 2);
    } else {
        const std::size_t mask = table_.size() - 1;
        std::size_t h = hash_entries(m, nn_) & mask;
        while (table_[h] != kNoElement) h = (h + 1) & mask;
        table_[h] = static_cast<u32>(order_ - 1);
    }
    return static_cast<u32>(order_ - 1);
}

u32 GroupData::find(const Matrix& m) const {
    if (m.n != n_ || m.F != F_) return kNoElement;
    Matrix c = m;
    canon_raw(c.a.data());
    return lookup(c.a.data());
}

u32 GroupData::mul(u32 a, u32 b) const {
    Elem buf[kMaxDegree * kMaxDegree];
    mul_raw(raw(a), raw(b), buf);
    canon_raw(buf);
    u32 r = lookup(buf);
    if (r == kNoElement) throw std::logic_error("product left the element table of " + name());
    return r;
}

u32 GroupData::power(u32 a, i64 e) const {
    if (e < 0) {
        a = inv_[a];
        e = -e;
    }
    u32 r = identity(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

u64 GroupData::element_order(u32 a) const {
    u64 k = 1;
    for (u32 x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
}

void GroupData::close(u64 budget) {
    data_.clear();
    order_ = 0;
    table_.assign(1024, kNoElement);
    Elem id[kMaxDegree * kMaxDegree] = {};
    for (int i = 0; i < n_; ++i) id[i * n_ + i] = 1;
    insert(id);
    std::vector<Matrix> gens;
    for (const auto& g : gen_mats_) gens.push_back(canonical(g));
    Elem buf[kMaxDegree * kMaxDegree];
    for (u32 i = 0; i < order_; ++i)
        for (const auto& g : gens) {
            mul_raw(raw(i), g.a.data(), buf);
            canon_raw(buf);
            if (lookup(buf) != kNoElement) continue;
            if (order_ >= budget)
                throw BudgetExceeded("enumeration of " + name() + " exceeded the budget of " + std::to_string(budget) +
                                     " elements (" + std::to_string(order_) + " found so far)");
            insert(buf);
        }
    gens_.clear();
    for (const auto& g : gens) gens_.push_back(lookup(g.a.data()));
}

void GroupData::finish() {
    // inverses
    inv_.assign(order_, kNoElement);
    for (u32 i = 0; i < order_; ++i) {
        if (inv_[i] != kNoElement) continue;
        u32 j = find(inverse(element(i)));
        inv_[i] = j;
        inv_[j] = i;
    }

    // conjugacy classes: orbits under conjugation by the generators
    std::vector<Matrix> gm, gi;
    for (u32 g : gens_) {
        gm.push_back(element(g));
        gi.push_back(element(inv_[g]));
    }
    class_of_.assign(order_, kNoElement);
    struct Raw {
        std::vector<u32> members;
        u32 rep;
    };
    std::vector<Raw> raw_classes;
    Elem t1[kMaxDegree * kMaxDegree], t2[kMaxDegree * kMaxDegree];
    for (u32 x = 0; x < order_; ++x) {
        if (class_of_[x] != kNoElement) continue;
        u32 id = static_cast<u32>(raw_classes.size());
        Raw rc;
        rc.members.push_back(x);
        class_of_[x] = id;
        for (std::size_t k = 0; k < rc.members.size(); ++k) {
            u32 y = rc.members[k];
            for (std::size_t g = 0; g < gm.size(); ++g) {
                mul_raw(gm[g].a.data(), raw(y), t1);
                mul_raw(t1, gi[g].a.data(), t2);
                canon_raw(t2);
                u32 z = lookup(t2);
                if (class_of_[z] == kNoElement) {
                    class_of_[z] = id;
                    rc.members.push_back(z);
                }
            }
        }
        rc.rep = *std::min_element(rc.members.begin(), rc.members.end(), [&](u32 a, u32 b) {
            return std::lexicographical_compare(raw(a), raw(a) + nn_, raw(b), raw(b) + nn_);
        });
        raw_classes.push_back(std::move(rc));
    }
    std::vector<u64> ord(raw_classes.size());
    for (std::size_t c = 0; c < raw_classes.size(); ++c) ord[c] = element_order(raw_classes[c].rep);
    std::vector<std::size_t> perm(raw_classes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        if (raw_classes[a].members.size() != raw_classes[b].members.size())
            return raw_classes[a].members.size() < raw_classes[b].members.size();
        u32 ra = raw_classes[a].rep, rb = raw_classes[b].rep;
        return std::lexicographical_compare(raw(ra), raw(ra) + nn_, raw(rb), raw(rb) + nn_);
    });
    class_rep_.clear();
    class_order_.clear();
    class_start_.assign(1, 0);
    class_elems_.clear();
    center_.clear();
    exponent_ = 1;
    for (std::size_t c = 0; c < perm.size(); ++c) {
        auto& rc = raw_classes[perm[c]];
        std::sort(rc.members.begin(), rc.members.end());
        for (u32 m : rc.members) class_of_[m] = static_cast<u32>(c);
        class_rep_.push_back(rc.rep);
        class_order_.push_back(ord[perm[c]]);
        class_elems_.insert(class_elems_.end(), rc.members.begin(), rc.members.end());
        class_start_.push_back(class_elems_.size());
        if (rc.members.size() == 1) center_.push_back(rc.rep);
        exponent_ = std::lcm(exponent_, ord[perm[c]]);
    }
    std::sort(center_.begin(), center_.end());
}

std::vector<u32> GroupData::class_members(std::size_t c) const {
    return std::vector<u32>(class_elems_.begin() + static_cast<std::ptrdiff_t>(class_start_[c]),
                            class_elems_.begin() + static_cast<std::ptrdiff_t>(class_start_[c + 1]));
}

std::vector<u32> GroupData::power_map(i64 k) const {
    std::vector<u32> out(class_count());
    for (std::size_t c = 0; c < class_count(); ++c) out[c] = class_of_[power(class_rep_[c], k)];
    return out;
}

u64 GroupData::closure_size(const FieldRef& F, int n, const std::vector<Matrix>& gens, u64 budget) {
    if (n < 1 || n > kMaxDegree) throw InvalidArgument("enumerated groups need degree 1.." + std::to_string(kMaxDegree));
    GroupData G;
    G.F_ = F;
    G.n_ = n;
    G.nn_ = static_cast<std::size_t>(n) * n;
    for (const auto& g : gens) {
        if (g.n != n || g.F != F) throw InvalidArgument("generator has the wrong shape or field");
        if (det(g) == 0) throw InvalidArgument("generator is not invertible");
        G.gen_mats_.push_back(g);
    }
    G.close(budget);
    return G.order_;
}

GroupRef GroupData::from_generators(const FieldRef& F, int n, const std::vector<Matrix>& gens, u64 budget,
                                    std::vector<Elem> scalars) {
    if (n < 1 || n > kMaxDegree) throw InvalidArgument("enumerated groups need degree 1.." + std::to_string(kMaxDegree));
    std::shared_ptr<GroupData> G(new GroupData());
    G->F_ = F;
    G->n_ = n;
    G->nn_ = static_cast<std::size_t>(n) * n;
    std::sort(scalars.begin(), scalars.end());
    G->scalars_ = std::move(scalars);
    for (const auto& g : gens) {
        if (g.n != n || g.F != F) throw InvalidArgument("generator has the wrong shape or field");
        if (det(g) == 0) throw InvalidArgument("generator is not invertible");
        G->gen_mats_.push_back(g);
    }
    G->close(budget);
    G->finish();
    return G;
}

GroupRef GroupData::enumerate(const GroupSpec& s, u64 budget, const std::string& cache_dir) {
    mpz_class expect = group_order(s);
    if (expect > budget)
        throw BudgetExceeded(s.str() + " has order " + expect.get_str() + ", over the enumeration budget of " +
                             std::to_string(budget));
    GroupSpec b = s.base();
    FieldRef F = s.field();
    if (b.n > kMaxDegree) throw InvalidArgument("enumerated groups need degree 1.." + std::to_string(kMaxDegree));
    std::shared_ptr<GroupData> G(new GroupData());
    G->spec_ = s;
    G->F_ = F;
    G->n_ = s.n;
    G->nn_ = static_cast<std::size_t>(s.n) * s.n;
    if (s.projective()) G->scalars_ = center_scalars(b);

    std::string path;
    if (!cache_dir.empty()) {
        path = (std::filesystem::path(cache_dir) / (s.str() + ".grp")).string();
        if (G->load(path, s)) {
            G->finish();
            return G;
        }
    }

    if (!b.unitary()) {
        G->gen_mats_ = standard_generators(b);
        G->close(budget);
    } else {
        u64 state = 0x5e1f0000ull + static_cast<u64>(s.n) * 1000003ull + s.q;
        bool special = b.special();
        for (int tries = 0; tries < 12; ++tries) {
            if (G->gen_mats_.size() < 2) G->gen_mats_.push_back(random_unitary(F, s.n, special, state));
            G->gen_mats_.push_back(random_unitary(F, s.n, special, state));
            G->close(budget);
            if (G->order_ == expect) break;
        }
    }
    if (G->order_ != expect)
        throw std::logic_error("enumeration of " + s.str() + " found " + std::to_string(G->order_) +
                               " elements, expected " + expect.get_str());
    G->finish();
    if (!path.empty()) G->save(path);
    return G;
}

GroupRef GroupData::shared(const GroupSpec& s, u64 budget, const std::string& cache_dir) {
    static std::mutex mu;
    static std::map<std::string, GroupRef> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(s.str());
        if (it != memo.end()) return it->second;
    }
    GroupRef G = enumerate(s, budget, cache_dir);
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(s.str(), G).first->second;
}

void GroupData::save(const std::string& path) const {
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    out << kCacheMagic << ' ' << kCacheVersion << ' ' << spec_->str() << ' ' << order_ << ' ' << gens_.size() << '\n';
    out.write(reinterpret_cast<const char*>(gens_.data()), static_cast<std::streamsize>(gens_.size() * sizeof(u32)));
    out.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size() * sizeof(Elem)));
    out.close();
    if (out) std::filesystem::rename(tmp, path, ec);
}

bool GroupData::load(const std::string& path, const GroupSpec& s) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string magic, spec;
    int version = 0;
    u64 order = 0, ngens = 0;
    in >> magic >> version >> spec >> order >> ngens;
    if (!in || magic != kCacheMagic || version != kCacheVersion || spec != s.str()) return false;
    mpz_class expect = group_order(s);
    if (expect != order) return false;
    in.get();
    std::vector<u32> gens(ngens);
    std::vector<Elem> data(order * nn_);
    in.read(reinterpret_cast<char*>(gens.data()), static_cast<std::streamsize>(ngens * sizeof(u32)));
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(Elem)));
    if (!in) return false;
    for (Elem e : data)
        if (e >= F_->q()) return false;
    for (u32 g : gens)
        if (g >= order) return false;
    data_ = std::move(data);
    order_ = order;
    std::size_t cap = 1024;
    while (cap < 2 * order_ + 2) cap *= 2;
    rehash(cap);
    // a corrupt table must not be trusted: every entry distinct and in the group
    for (u32 i = 0; i < order_; ++i)
        if (lookup(raw(i)) != i || !contains(s, element(i))) return false;
    gens_ = std::move(gens);
    return true;
}

// ---------------------------------------------------------------------------

Subgroup subgroup_generated(const GroupData& G, const std::vector<u32>& gens) {
    Subgroup H;
    H.member.assign(G.order(), false);
    H.elems.push_back(G.identity());
    H.member[G.identity()] = true;
    for (std::size_t i = 0; i < H.elems.size(); ++i)
        for (u32 g : gens) {
            u32 y = G.mul(H.elems[i], g);
            if (!H.member[y]) {
                H.member[y] = true;
                H.elems.push_back(y);
            }
        }
    std::sort(H.elems.begin(), H.elems.end());
    for (u32 g : gens)
        if (g != G.identity() && std::find(H.gens.begin(), H.gens.end(), g) == H.gens.end()) H.gens.push_back(g);
    return H;
}

Subgroup subgroup_from_elements(const GroupData& G, std::vector<u32> elems) {
    std::sort(elems.begin(), elems.end());
    Subgroup cur = trivial_subgroup(G);
    std::vector<u32> gens;
    for (u32 e : elems) {
        if (cur.contains(e)) continue;
        gens.push_back(e);
        cur = subgroup_generated(G, gens);
        if (cur.order() == elems.size()) break;
    }
    if (cur.elems != elems) throw InvalidArgument("element list is not a subgroup");
    return cur;
}

Subgroup whole_group(const GroupData& G) {
    Subgroup H;
    H.elems.resize(G.order());
    std::iota(H.elems.begin(), H.elems.end(), 0u);
    H.member.assign(G.order(), true);
    H.gens = G.generators();
    return H;
}

Subgroup trivial_subgroup(const GroupData& G) { return subgroup_generated(G, {}); }

Subgroup normalizer(const GroupData& G, const Subgroup& H) {
    std::vector<u32> out;
    for (u32 g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (u32 h : H.gens)
            if (!H.contains(G.conj(g, h))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return subgroup_from_elements(G, std::move(out));
}

Subgroup centralizer(const GroupData& G, const Subgroup& H) {
    std::vector<u32> out;
    for (u32 g = 0; g < G.order(); ++g) {
        bool ok = true;
        for (u32 h : H.gens)
            if (G.mul(g, h) != G.mul(h, g)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return subgroup_from_elements(G, std::move(out));
}

bool is_normal(const GroupData& G, const Subgroup& H) {
    for (u32 g : G.generators())
        for (u32 h : H.gens)
            if (!H.contains(G.conj(g, h))) return false;
    return true;
}

Subgroup sylow_2_generic(const GroupData& G) {
    const u64 target = two_part(G.order());
    Subgroup P = trivial_subgroup(G);
    std::vector<u32> gens;
    while (P.order() < target) {
        Subgroup N = normalizer(G, P);
        u32 pick = kNoElement;
        for (u32 x : N.elems) {
            if (P.contains(x)) continue;
            // order of xP in N/P
            u64 j = 1;
            u32 y = x;
            while (!P.contains(y)) {
                y = G.mul(y, x);
                ++j;
            }
            if (j % 2 == 0) {
                pick = G.power(x, static_cast<i64>(j / 2));
                break;
            }
        }
        if (pick == kNoElement) throw std::logic_error("normaliser quotient has odd order below the Sylow bound");
        gens.push_back(pick);
        P = subgroup_generated(G, gens);
    }
    return P;
}

std::vector<u32> Quotient::class_proj() const {
    std::vector<u32> out(source->class_count());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = group->class_of(proj[source->class_rep(c)]);
    return out;
}

Quotient quotient_by_central(const GroupRef& G, const std::vector<u32>& Z) {
    std::vector<Elem> sc = G->scalars();
    if (sc.empty()) sc.push_back(1);
    for (u32 z : Z) {
        for (u32 g : G->generators())
            if (G->mul(z, g) != G->mul(g, z)) throw InvalidArgument("quotient_by_central: subgroup is not central");
        Matrix m = G->element(z);
        if (!m.is_scalar())
            throw InvalidArgument("quotient_by_central: only subgroups of scalar matrices are supported");
        sc.push_back(m(0, 0));
    }
    // close the scalar set under multiplication
    const FiniteField& F = *G->field();
    for (std::size_t i = 0; i < sc.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Elem v = F.mul(sc[i], sc[j]);
            if (std::find(sc.begin(), sc.end(), v) == sc.end()) sc.push_back(v);
        }
    std::vector<Matrix> gens;
    for (u32 g : G->generators()) gens.push_back(G->element(g));
    Quotient Q;
    Q.source = G.get();
    Q.group = GroupData::from_generators(G->field(), G->degree(), gens, G->order(), sc);
    Q.proj.resize(G->order());
    for (u32 x = 0; x < G->order(); ++x) Q.proj[x] = Q.group->find(G->element(x));
    return Q;
}

}  // namespace selfnorm

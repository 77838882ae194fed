#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selfnorm/group_spec.hpp"

namespace selfnorm {

using u32 = std::uint32_t;

constexpr u64 kEnumerationBudget = 200000;
constexpr u32 kNoElement = 0xffffffffu;

class GroupData;
using GroupRef = std::shared_ptr<const GroupData>;

// A finite matrix group held as an explicit element table. Elements are
// indexed 0..order-1 in BFS order from the generators, index 0 being the
// identity. A group may be a quotient by scalar matrices: every element is
// then stored as the canonical (lexicographically least) scalar multiple.
// Immutable once built.
class GroupData {
public:
    // Enumerates the group of `s` (projective kinds as central quotients).
    // With a non-empty cache_dir the element table is read from / written to
    // `<cache_dir>/<spec>.grp`.
    static GroupRef enumerate(const GroupSpec& s, u64 budget = kEnumerationBudget, const std::string& cache_dir = "");
    // Memoised enumerate() for the lifetime of the process.
    static GroupRef shared(const GroupSpec& s, u64 budget = kEnumerationBudget, const std::string& cache_dir = "");
    // Group generated by n x n matrices over F, modulo the scalar subgroup
    // given by `scalars` (which must be closed under multiplication and contain 1).
    static GroupRef from_generators(const FieldRef& F, int n, const std::vector<Matrix>& gens,
                                    u64 budget = kEnumerationBudget, std::vector<Elem> scalars = {});

    // Order of the generated group without building classes or inverses.
    static u64 closure_size(const FieldRef& F, int n, const std::vector<Matrix>& gens, u64 budget = kEnumerationBudget);

    const std::optional<GroupSpec>& spec() const { return spec_; }
    std::string name() const;
    const FieldRef& field() const { return F_; }
    int degree() const { return n_; }
    u64 order() const { return order_; }
    const std::vector<Elem>& scalars() const { return scalars_; }

    Matrix element(u32 i) const;
    const Elem* raw(u32 i) const { return data_.data() + static_cast<std::size_t>(i) * nn_; }
    // Index of the (canonicalised) matrix, or kNoElement.
    u32 find(const Matrix& m) const;
    Matrix canonical(const Matrix& m) const;

    u32 identity() const { return 0; }
    u32 mul(u32 a, u32 b) const;
    u32 inv(u32 a) const { return inv_[a]; }
    u32 conj(u32 g, u32 x) const { return mul(mul(g, x), inv_[g]); }  // g x g^-1
    u32 power(u32 a, i64 e) const;
    u64 element_order(u32 a) const;
    const std::vector<u32>& generators() const { return gens_; }

    // Conjugacy classes, ordered by (element order, class size, least member).
    std::size_t class_count() const { return class_rep_.size(); }
    u32 class_of(u32 x) const { return class_of_[x]; }
    u32 class_rep(std::size_t c) const { return class_rep_[c]; }
    u64 class_size(std::size_t c) const { return class_start_[c + 1] - class_start_[c]; }
    u64 centralizer_order(std::size_t c) const { return order_ / class_size(c); }
    u64 class_order(std::size_t c) const { return class_order_[c]; }
    std::vector<u32> class_members(std::size_t c) const;
    u64 exponent() const { return exponent_; }
    const std::vector<u32>& center() const { return center_; }
    // Class of rep_c^k for every class c.
    std::vector<u32> power_map(i64 k) const;

private:
    GroupData() = default;
    void mul_raw(const Elem* x, const Elem* y, Elem* out) const;
    void canon_raw(Elem* m) const;
    u32 lookup(const Elem* m) const;
    u32 insert(const Elem* m);
    void rehash(std::size_t cap);
    void close(u64 budget);
    void finish();
    void save(const std::string& path) const;
    bool load(const std::string& path, const GroupSpec& s);

    std::optional<GroupSpec> spec_;
    FieldRef F_;
    int n_ = 0;
    std::size_t nn_ = 0;
    u64 order_ = 0;
    std::vector<Elem> scalars_;
    std::vector<Elem> data_;
    std::vector<u32> table_;
    std::vector<u32> gens_;
    std::vector<Matrix> gen_mats_;
    std::vector<u32> inv_;
    std::vector<u32> class_of_;
    std::vector<u32> class_rep_;
    std::vector<u64> class_start_;
    std::vector<u32> class_elems_;
    std::vector<u64> class_order_;
    std::vector<u32> center_;
    u64 exponent_ = 1;
};

// Generators used for the base matrix group of a spec (deterministic).
std::vector<Matrix> standard_generators(const GroupSpec& s);
// A unitary matrix (conj(M)^T M = I) drawn from `state`; det 1 when `special`.
Matrix random_unitary(const FieldRef& F2, int n, bool special, u64& state);

// A subgroup as a sorted element-index list with a membership bitmap and a
// small generating set.
struct Subgroup {
    std::vector<u32> elems;
    std::vector<u32> gens;
    std::vector<bool> member;

    std::size_t order() const { return elems.size(); }
    bool contains(u32 x) const { return member[x]; }
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems == b.elems; }
};

Subgroup subgroup_generated(const GroupData& G, const std::vector<u32>& gens);
// Subgroup from a full element list (must be closed); a generating set is chosen greedily.
Subgroup subgroup_from_elements(const GroupData& G, std::vector<u32> elems);
Subgroup whole_group(const GroupData& G);
Subgroup trivial_subgroup(const GroupData& G);
Subgroup normalizer(const GroupData& G, const Subgroup& H);
Subgroup centralizer(const GroupData& G, const Subgroup& H);
bool is_normal(const GroupData& G, const Subgroup& H);
// Sylow 2-subgroup grown one step at a time inside successive normalisers.
Subgroup sylow_2_generic(const GroupData& G);

struct Quotient {
    GroupRef group;
    std::vector<u32> proj;  // element of G -> element of the quotient
    std::vector<u32> class_proj() const;
    const GroupData* source = nullptr;
};

// G / Z for a subgroup Z of scalar matrices in the centre of G.
Quotient quotient_by_central(const GroupRef& G, const std::vector<u32>& Z);

}  // namespace selfnorm

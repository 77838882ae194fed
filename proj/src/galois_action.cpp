#include "selfnorm/galois_action.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace selfnorm {

std::size_t galois_on_character(const CharacterTable& T, std::size_t row, i64 k) {
    const i64 e = static_cast<i64>(T.exponent());
    std::vector<Cyclotomic> img;
    img.reserve(T.classes());
    for (const auto& v : T.row(row)) img.push_back(galois_apply(v, {T.exponent(), ((k % e) + e) % e}));
    long r = T.find_row(img);
    if (r < 0) throw std::logic_error("galois image of row " + std::to_string(row) + " is not a row of the table");
    return static_cast<std::size_t>(r);
}

RowPermutation galois_permutation(const CharacterTable& T, i64 k) {
    RowPermutation perm(T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) perm[i] = galois_on_character(T, i, k);
    return perm;
}

std::size_t sigma_on_character(const CharacterTable& T, std::size_t row) {
    return galois_on_character(T, row, static_cast<i64>(sigma_exponent(T.exponent())));
}

RowPermutation sigma_permutation(const CharacterTable& T) {
    return galois_permutation(T, static_cast<i64>(sigma_exponent(T.exponent())));
}

std::vector<std::size_t> class_permutation(const GroupData& G, const AutomorphismDesc& a) {
    if (!G.spec()) throw InvalidArgument("class_permutation: the group has no spec");
    const GroupSpec& s = *G.spec();
    std::vector<std::size_t> out(G.class_count());
    std::vector<bool> hit(G.class_count(), false);
    for (std::size_t c = 0; c < out.size(); ++c) {
        Matrix img = apply_automorphism(s, G.element(G.class_rep(c)), a);
        u32 x = G.find(img);
        if (x == kNoElement) throw InvalidArgument("automorphism " + a.str() + " does not stabilise " + G.name());
        out[c] = G.class_of(x);
        if (hit[out[c]]) throw InvalidArgument("automorphism " + a.str() + " is not bijective on classes");
        hit[out[c]] = true;
    }
    return out;
}

namespace {

RowPermutation permutation_from_classes(const CharacterTable& T, const std::vector<std::size_t>& pi) {
    RowPermutation perm(T.rows());
    for (std::size_t i = 0; i < T.rows(); ++i) {
        // chi^a(pi(c)) = chi(c)
        std::vector<Cyclotomic> img(T.classes());
        for (std::size_t c = 0; c < T.classes(); ++c) img[pi[c]] = T.value(i, c);
        long r = T.find_row(img);
        if (r < 0) throw std::logic_error("automorphism image of row " + std::to_string(i) + " is not a row");
        perm[i] = static_cast<std::size_t>(r);
    }
    return perm;
}

}  // namespace

std::size_t automorphism_on_character(const CharacterTable& T, const AutomorphismDesc& a, std::size_t row) {
    return automorphism_permutation(T, a)[row];
}

RowPermutation automorphism_permutation(const CharacterTable& T, const AutomorphismDesc& a) {
    return permutation_from_classes(T, class_permutation(*T.group(), a));
}

std::vector<std::size_t> odd_degree_rows(const CharacterTable& T) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < T.rows(); ++i)
        if (T.degree(i) % 2 == 1) out.push_back(i);
    return out;
}

bool all_odd_sigma_fixed(const CharacterTable& T) {
    for (std::size_t i : odd_degree_rows(T))
        if (sigma_on_character(T, i) != i) return false;
    return true;
}

UnipSquareReport check_unip_square(const CharacterTable& T, u64 p) {
    const GroupData& G = *T.group();
    const u64 k = sigma_exponent(T.exponent());
    auto sq = G.power_map(2);
    UnipSquareReport rep;
    rep.rows_checked = T.rows();
    for (std::size_t c = 0; c < G.class_count(); ++c) {
        u64 o = G.class_order(c);
        while (o % p == 0) o /= p;
        if (o != 1) continue;
        ++rep.classes_checked;
        for (std::size_t i = 0; i < T.rows(); ++i)
            if (galois_apply(T.value(i, c), {T.exponent(), static_cast<i64>(k)}) != T.value(i, sq[c])) {
                rep.holds = false;
                rep.failures.emplace_back(i, c);
            }
    }
    return rep;
}

std::vector<std::size_t> ambient_stable_classes(const CharacterTable& sub, const CharacterTable& ambient) {
    auto fus = class_fusion(*sub.group(), *ambient.group());
    std::vector<std::size_t> count(ambient.classes(), 0);
    for (auto f : fus) ++count[f];
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < fus.size(); ++c)
        if (count[fus[c]] == 1) out.push_back(c);
    return out;
}

bool check_class_invariant_ratio(const CharacterTable& sub, const CharacterTable& ambient, std::size_t row,
                                 std::size_t ambient_row, std::size_t cls) {
    auto stable = ambient_stable_classes(sub, ambient);
    if (!std::binary_search(stable.begin(), stable.end(), cls))
        throw InvalidArgument("class " + std::to_string(cls) + " is not stable under the ambient group");
    bool covers = false;
    for (const auto& c : restrict_and_decompose(sub, ambient, ambient_row))
        if (c.row == row) covers = true;
    if (!covers) throw InvalidArgument("ambient row does not cover the given row");
    auto fus = class_fusion(*sub.group(), *ambient.group());
    Cyclotomic lhs = sub.value(row, cls) * ambient.value(ambient_row, 0);
    Cyclotomic rhs = ambient.value(ambient_row, fus[cls]) * sub.value(row, 0);
    return lhs == rhs;
}

std::vector<std::size_t> q_invariant_odd_rows(const CharacterTable& T, const std::vector<AutomorphismDesc>& Q) {
    std::vector<RowPermutation> perms;
    for (const auto& a : Q) perms.push_back(automorphism_permutation(T, a));
    std::vector<std::size_t> out;
    for (std::size_t i : odd_degree_rows(T)) {
        bool fixed = true;
        for (const auto& p : perms) fixed = fixed && p[i] == i;
        if (fixed) out.push_back(i);
    }
    return out;
}

std::string permutation_str(const RowPermutation& perm) {
    // cycle notation on moved rows, "()" for the identity
    std::ostringstream os;
    std::vector<bool> seen(perm.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == i) continue;
        any = true;
        os << "(";
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            if (j != i) os << " ";
            os << j;
            seen[j] = true;
        }
        os << ")";
    }
    return any ? os.str() : "()";
}

}  // namespace selfnorm

#pragma once

#include <string>
#include <vector>

#include "selfnorm/character_table.hpp"

namespace selfnorm {

// Row permutations: perm[i] is the image of row i.
using RowPermutation = std::vector<std::size_t>;

// Row of the character chi^gamma, gamma: z_e -> z_e^k on the exponent e of
// the group (k a unit mod e). Throws std::logic_error if the image is not a row.
std::size_t galois_on_character(const CharacterTable& T, std::size_t row, i64 k);
RowPermutation galois_permutation(const CharacterTable& T, i64 k);

// sigma fixes 2-power roots of unity and squares odd-order ones.
std::size_t sigma_on_character(const CharacterTable& T, std::size_t row);
RowPermutation sigma_permutation(const CharacterTable& T);

// Class c -> class of a(rep_c). The group must carry a spec; throws
// InvalidArgument if a does not map G to itself.
std::vector<std::size_t> class_permutation(const GroupData& G, const AutomorphismDesc& a);
// Row of chi^a with chi^a(g) = chi(a^-1(g)).
std::size_t automorphism_on_character(const CharacterTable& T, const AutomorphismDesc& a, std::size_t row);
RowPermutation automorphism_permutation(const CharacterTable& T, const AutomorphismDesc& a);

std::vector<std::size_t> odd_degree_rows(const CharacterTable& T);
bool all_odd_sigma_fixed(const CharacterTable& T);

// chi(u)^sigma = chi(u^2) for every row and every class of p-power order.
struct UnipSquareReport {
    bool holds = true;
    std::size_t classes_checked = 0;
    std::size_t rows_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> failures;  // (row, class)
};
UnipSquareReport check_unip_square(const CharacterTable& T, u64 p);

// chi(g) chi~(1) = chi~(g) chi(1) for a class g of G whose G-class is stable
// under the ambient group and a row chi~ of the ambient table covering chi.
// Throws InvalidArgument when either precondition fails.
bool check_class_invariant_ratio(const CharacterTable& sub, const CharacterTable& ambient, std::size_t row,
                                 std::size_t ambient_row, std::size_t cls);
// Classes of the subgroup table whose class is stable under the ambient group.
std::vector<std::size_t> ambient_stable_classes(const CharacterTable& sub, const CharacterTable& ambient);

// Odd-degree rows fixed by every listed automorphism.
std::vector<std::size_t> q_invariant_odd_rows(const CharacterTable& T, const std::vector<AutomorphismDesc>& Q);

std::string permutation_str(const RowPermutation& perm);

}  // namespace selfnorm

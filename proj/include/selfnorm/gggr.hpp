#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfnorm/character_table.hpp"

namespace selfnorm {

// A nilpotent e in Jordan form, written in a basis ordered by descending
// weight of the cocharacter attached to its Jordan type, and u = I + e.
struct NilpotentData {
    std::vector<int> partition;
    std::vector<int> weights;                 // descending
    std::vector<std::pair<int, int>> basis;   // (block, position in block) of each basis vector
    Matrix e;
    Matrix u;

    std::string partition_str() const;
};

// Weights (d-1, d-3, ..., 1-d) of every block, merged in descending order.
std::vector<int> jordan_cocharacter(const std::vector<int>& partition);

// Parses "3,1" (or "3 1") into a partition, descending.
std::vector<int> parse_partition(const std::string& s);

NilpotentData nilpotent_data(const FieldRef& F, const std::vector<int>& partition);
// Same weights and basis with another nilpotent of weight 2 (throws if e is not).
NilpotentData with_nilpotent(const NilpotentData& nil, const Matrix& e);

// Number of pairs (j, k) with w_j - w_k >= level: the dimension of u(lambda, level).
int weight_dimension(const std::vector<int>& weights, int level);
// M - I supported on positions (j, k) with w_j - w_k >= level.
bool in_weight_subgroup(const std::vector<int>& weights, const Matrix& M, int level);
// Every element I + X of U(lambda, level).
std::vector<Matrix> weight_subgroup_elements(const FieldRef& F, const std::vector<int>& weights, int level,
                                             u64 budget = 2000000);

// x - I for a unipotent x.
Matrix kawanaka_map(const Matrix& x);

// phi_u(x) = z_p^Tr(trace(e^T (x - I))) on U(lambda, 2), as the exponent of z_p.
u64 phi_u_exponent(const NilpotentData& nil, const Matrix& x);
Cyclotomic phi_u(const NilpotentData& nil, const Matrix& x);

// q^(-k) Ind_{U(lambda,2)}^G phi_u with q^(2k) = [U(lambda,1) : U(lambda,2)].
// G is an enumerated GL_n(q) or SL_n(q) with p odd.
ClassFunction gggr_character(const GroupRef& G, const NilpotentData& nil, u64 budget = 2000000);
// The subgroup U(lambda, 2) of G.
Subgroup gggr_subgroup(const GroupData& G, const NilpotentData& nil, u64 budget = 2000000);

// <Gamma, chi> for every row; each must be a non-negative integer.
std::vector<u64> gggr_multiplicities(const CharacterTable& T, const ClassFunction& gamma);

// A nilpotent e' of weight 2 for the same cocharacter with I + e' in the
// G-class `target` and the same Jordan type: k e first (when `scale` is given),
// then a search of g(lambda, 2) in code order.
std::optional<NilpotentData> nilpotent_in_class(const GroupData& G, const NilpotentData& nil, u32 target,
                                                std::optional<Elem> scale = std::nullopt, u64 budget = 2000000);

struct GggrGaloisCheck {
    bool holds = false;
    i64 k = 1;              // gamma(z_p) = z_p^k
    Matrix e_power;         // the nilpotent used for u^k
    std::string method;     // "scaled" or "search"
};

// Gamma_u^gamma = Gamma_(u^k) as class functions, with gamma(z_p) = z_p^k.
GggrGaloisCheck verify_gggr_galois(const GroupRef& G, const NilpotentData& nil, const GaloisMap& gamma,
                                   u64 budget = 2000000);

struct ValueFieldReport {
    int eta = 1;                 // eta = p mod 4
    bool quadratic_ok = false;   // every value lies in Q(sqrt(eta p))
    bool integer_claim = false;  // q a square, n odd, or n/(n, q - eps) even
    bool all_integers = false;
    bool holds() const { return quadratic_ok && (!integer_claim || all_integers); }
};

ValueFieldReport gggr_value_field(const ClassFunction& gamma, int n, u64 q, int eps);

}  // namespace selfnorm

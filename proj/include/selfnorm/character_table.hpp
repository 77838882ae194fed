#pragma once

#include <map>
#include <string>
#include <vector>

#include "selfnorm/cyclotomic.hpp"
#include "selfnorm/group_data.hpp"

namespace selfnorm {

constexpr std::size_t kMaxTableClasses = 200;
constexpr int kTableFormatVersion = 1;

// Class-multiplication coefficients of an enumerated group:
// coeff(i, j, k) = #{(x, y) : x in class i, y in class j, x y = rep_k}.
class ClassMatrices {
public:
    explicit ClassMatrices(const GroupData& G);
    std::size_t classes() const { return k_; }
    u64 coeff(std::size_t i, std::size_t j, std::size_t k) const { return a_[(i * k_ + j) * k_ + k]; }
    // M_j[i][k] = coeff(i, j, k), row-major.
    std::vector<u64> matrix(std::size_t j) const;

private:
    std::size_t k_;
    std::vector<u64> a_;
};

std::vector<u64> class_matrix(const GroupData& G, std::size_t j);

// A class function of an enumerated group, one value per class.
struct ClassFunction {
    GroupRef group;
    std::vector<Cyclotomic> values;

    const Cyclotomic& operator[](std::size_t c) const { return values[c]; }
    const Cyclotomic& degree() const { return values[0]; }
};

// (1/|G|) sum_g a(g) conj(b(g)).
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);
// Same, required to be rational.
mpq_class inner_product_q(const ClassFunction& a, const ClassFunction& b);

class CharacterTable {
public:
    const GroupRef& group() const { return G_; }
    u64 exponent() const { return e_; }
    u64 prime() const { return ell_; }  // the modular prime used by the construction
    std::size_t rows() const { return chi_.size(); }
    std::size_t classes() const { return chi_.empty() ? 0 : chi_[0].size(); }
    const Cyclotomic& value(std::size_t row, std::size_t cls) const { return chi_[row][cls]; }
    const std::vector<Cyclotomic>& row(std::size_t i) const { return chi_[i]; }
    u64 degree(std::size_t i) const { return deg_[i]; }
    const std::vector<u64>& degrees() const { return deg_; }
    ClassFunction character(std::size_t i) const { return {G_, chi_[i]}; }
    // Class of rep^-1.
    std::size_t inverse_class(std::size_t c) const { return inv_class_[c]; }
    // Row whose values equal `values` exactly, or -1.
    long find_row(const std::vector<Cyclotomic>& values) const;

    // Multiplicities <f, chi_i> for every row (each must be rational).
    std::vector<mpq_class> decompose(const ClassFunction& f) const;

    // Versioned, byte-stable text export.
    std::string export_text() const;

    friend CharacterTable dixon_table(const GroupRef& G, std::size_t max_classes);

private:
    GroupRef G_;
    u64 e_ = 1;
    u64 ell_ = 0;
    std::vector<std::vector<Cyclotomic>> chi_;
    std::vector<u64> deg_;
    std::vector<std::size_t> inv_class_;
    std::map<std::string, std::size_t> index_;
};

// Exact character table by the Dixon-Schneider method. Rows: the trivial
// character first, then by degree and the serialized values.
CharacterTable dixon_table(const GroupRef& G, std::size_t max_classes = kMaxTableClasses);

// Smallest prime l = 1 mod e with l > 2 sqrt(order), starting the search above `after`.
u64 dixon_prime(u64 e, u64 order, u64 after = 0);

// omega_chi(z) = chi(z)/chi(1) for every central element z, keyed by element index.
std::map<u32, Cyclotomic> central_character(const CharacterTable& T, std::size_t row);

// Induction from a subgroup H of G of a function given by its values on the
// elements of H (parallel to H.elems).
ClassFunction induce(const GroupRef& G, const Subgroup& H, const std::vector<Cyclotomic>& f);
// Same for a function with values z_m^exps[i].
ClassFunction induce_roots(const GroupRef& G, const Subgroup& H, u64 m, const std::vector<u64>& exps);
// Values of f on the elements of H (parallel to H.elems).
std::vector<Cyclotomic> restrict_to(const ClassFunction& f, const Subgroup& H);
// (1/|H|) sum_h a(h) conj(b(h)).
Cyclotomic subgroup_inner_product(const Subgroup& H, const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b);

// Class of G containing each class of the subgroup S, where S and G are
// enumerated matrix groups over the same field and S's elements lie in G.
std::vector<std::size_t> class_fusion(const GroupData& S, const GroupData& G);

struct Constituent {
    std::size_t row;
    u64 multiplicity;
};

// Restriction of row `row` of the table of G~ to the subgroup G (tables of
// both given), decomposed into irreducibles of G.
std::vector<Constituent> restrict_and_decompose(const CharacterTable& sub, const CharacterTable& ambient,
                                                std::size_t row);

}  // namespace selfnorm

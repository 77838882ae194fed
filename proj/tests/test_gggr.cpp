#include <gtest/gtest.h>

#include <random>

#include "selfnorm/gggr.hpp"

using namespace selfnorm;

namespace {

GroupRef E(const char* s) { return GroupData::shared(GroupSpec::parse(s)); }

const CharacterTable& table(const char* s) {
    static std::map<std::string, CharacterTable> memo;
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, dixon_table(E(s))).first;
    return it->second;
}

std::vector<std::vector<int>> partitions(int n, int max_part) {
    if (n == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int k = std::min(n, max_part); k >= 1; --k)
        for (auto rest : partitions(n - k, k)) {
            rest.insert(rest.begin(), k);
            out.push_back(rest);
        }
    return out;
}

bool is_zero(const Matrix& M) {
    return std::all_of(M.a.begin(), M.a.end(), [](Elem v) { return v == 0; });
}

// Ind by summing over all of G: (1/|H|) sum_x f(x g x^-1).
ClassFunction brute_gggr(const GroupRef& G, const NilpotentData& nil) {
    Subgroup U2 = gggr_subgroup(*G, nil);
    const u64 p = G->field()->p();
    std::map<u32, u64> phi;
    for (u32 h : U2.elems) phi[h] = phi_u_exponent(nil, G->element(h));
    const int k = (weight_dimension(nil.weights, 1) - weight_dimension(nil.weights, 2)) / 2;
    mpq_class norm(1, U2.order());
    for (int i = 0; i < k; ++i) norm /= static_cast<unsigned long>(G->field()->q());
    ClassFunction out{G, {}};
    for (std::size_t c = 0; c < G->class_count(); ++c) {
        std::vector<i64> mult(p, 0);
        const u32 g = G->class_rep(c);
        for (u32 x = 0; x < G->order(); ++x) {
            auto it = phi.find(G->conj(x, g));
            if (it != phi.end()) ++mult[it->second];
        }
        out.values.push_back(Cyclotomic::from_exponents(p, mult).scaled(norm));
    }
    return out;
}

bool unipotent_class(const GroupData& G, std::size_t c) {
    u64 o = G.class_order(c);
    const u64 p = G.field()->p();
    while (o % p == 0) o /= p;
    return o == 1;
}

}  // namespace

TEST(Gggr, CocharacterExamples) {
    EXPECT_EQ(jordan_cocharacter({2}), (std::vector<int>{1, -1}));
    EXPECT_EQ(jordan_cocharacter({2, 2}), (std::vector<int>{1, 1, -1, -1}));
    EXPECT_EQ(jordan_cocharacter({1, 1, 1}), (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(jordan_cocharacter({4}), (std::vector<int>{3, 1, -1, -3}));
    EXPECT_EQ(jordan_cocharacter({3, 1}), (std::vector<int>{2, 0, 0, -2}));
    EXPECT_EQ(parse_partition("1,3"), (std::vector<int>{3, 1}));
    EXPECT_THROW(parse_partition("2,x"), InvalidArgument);
}

TEST(Gggr, NilpotentHasWeightTwoAndJordanType) {
    FieldRef F = FiniteField::of_order(5);
    for (int n = 1; n <= 6; ++n)
        for (const auto& part : partitions(n, n)) {
            NilpotentData nil = nilpotent_data(F, part);
            EXPECT_EQ(nil.weights, jordan_cocharacter(part));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (nil.e(i, j)) EXPECT_EQ(nil.weights[i] - nil.weights[j], 2);
            // rank of e^k is sum over parts of max(d - k, 0)
            Matrix P = nil.e;
            for (int k = 1; k <= n; ++k) {
                int expect = 0;
                for (int d : part) expect += std::max(d - k, 0);
                EXPECT_EQ(rank(P), expect);
                P = P * nil.e;
            }
            // even index [U(1) : U(2)]
            EXPECT_EQ((weight_dimension(nil.weights, 1) - weight_dimension(nil.weights, 2)) % 2, 0);
        }
}

TEST(Gggr, KawanakaMap) {
    FieldRef F = FiniteField::of_order(3);
    EXPECT_TRUE(is_zero(kawanaka_map(Matrix::identity(F, 3))));
    NilpotentData two = nilpotent_data(F, {2});
    Matrix E12(F, 2);
    E12(0, 1) = 1;
    EXPECT_EQ(kawanaka_map(two.u), E12);
    EXPECT_THROW(kawanaka_map(Matrix::diag(F, {2, 1})), InvalidArgument);

    NilpotentData nil = nilpotent_data(F, {3, 1});
    auto U2 = weight_subgroup_elements(F, nil.weights, 2);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, U2.size() - 1);
    Matrix I = Matrix::identity(F, 4);
    for (int t = 0; t < 100; ++t) {
        const Matrix& x = U2[pick(rng)];
        const Matrix& y = U2[pick(rng)];
        Matrix d = kawanaka_map(x * y) - kawanaka_map(x) - kawanaka_map(y);
        EXPECT_TRUE(in_weight_subgroup(nil.weights, d + I, 3));
        EXPECT_TRUE(in_weight_subgroup(nil.weights, kawanaka_map(x) + I, 2));
    }
}

TEST(Gggr, WeightSubgroupNormality) {
    FieldRef F = FiniteField::of_order(3);
    for (const auto& part : {std::vector<int>{3, 1}, std::vector<int>{2, 2}, std::vector<int>{2, 1}}) {
        NilpotentData nil = nilpotent_data(F, part);
        auto U1 = weight_subgroup_elements(F, nil.weights, 1);
        auto U2 = weight_subgroup_elements(F, nil.weights, 2);
        for (const Matrix& g : U1)
            for (const Matrix& x : U2) ASSERT_TRUE(in_weight_subgroup(nil.weights, conjugate_by(g, x), 2));
    }
}

TEST(Gggr, LinearCharacterExamples) {
    FieldRef F = FiniteField::of_order(3);
    NilpotentData two = nilpotent_data(F, {2});
    for (Elem c = 0; c < 3; ++c) {
        Matrix x = Matrix::identity(F, 2);
        x(0, 1) = c;
        EXPECT_EQ(phi_u_exponent(two, x), c);
        EXPECT_EQ(phi_u(two, x), Cyclotomic::root_of_unity(3, c));
    }
    Matrix low = Matrix::identity(F, 2);
    low(1, 0) = 1;
    EXPECT_THROW(phi_u(two, low), InvalidArgument);

    for (auto [q, part] : {std::pair{3u, std::vector<int>{2, 1}}, std::pair{3u, std::vector<int>{3, 1}},
                           std::pair{5u, std::vector<int>{2, 2}}, std::pair{9u, std::vector<int>{3}}}) {
        FieldRef Fq = FiniteField::of_order(q);
        NilpotentData nil = nilpotent_data(Fq, part);
        auto U2 = weight_subgroup_elements(Fq, nil.weights, 2);
        const u64 p = Fq->p();
        for (const Matrix& x : U2)
            for (const Matrix& y : U2)
                ASSERT_EQ(phi_u_exponent(nil, x * y), (phi_u_exponent(nil, x) + phi_u_exponent(nil, y)) % p);
    }
}

TEST(Gggr, TrivialPartitionIsRegularCharacter) {
    for (const char* s : {"GL(2,3,+1)", "SL(2,5,+1)", "SL(3,3,+1)"}) {
        GroupRef G = E(s);
        ClassFunction g = gggr_character(G, nilpotent_data(G->field(), std::vector<int>(G->degree(), 1)));
        EXPECT_EQ(g.values[0], Cyclotomic(static_cast<long>(G->order())));
        for (std::size_t c = 1; c < g.values.size(); ++c) EXPECT_EQ(g.values[c], Cyclotomic(0));
        auto mult = gggr_multiplicities(table(s), g);
        for (std::size_t i = 0; i < mult.size(); ++i) EXPECT_EQ(mult[i], table(s).degree(i));
    }
}

TEST(Gggr, GelfandGraevOfSL23) {
    GroupRef G = E("SL(2,3,+1)");
    ClassFunction g = gggr_character(G, nilpotent_data(G->field(), {2}));
    EXPECT_EQ(g.values[0], Cyclotomic(8));
    for (std::size_t c = 0; c < G->class_count(); ++c)
        if (!unipotent_class(*G, c) && !G->class_members(c).empty() && c != 0) {
            // only classes meeting U(lambda, 2) carry values
            EXPECT_EQ(g.values[c], Cyclotomic(0)) << c;
        }
    ValueFieldReport v = gggr_value_field(g, 2, 3, 1);
    EXPECT_EQ(v.eta, -1);
    EXPECT_TRUE(v.quadratic_ok);
    EXPECT_FALSE(v.all_integers);
    EXPECT_FALSE(v.integer_claim);
    EXPECT_TRUE(v.holds());
}

TEST(Gggr, GelfandGraevOfGL23IsMultiplicityFree) {
    GroupRef G = E("GL(2,3,+1)");
    const CharacterTable& T = table("GL(2,3,+1)");
    ClassFunction g = gggr_character(G, nilpotent_data(G->field(), {2}));
    auto mult = gggr_multiplicities(T, g);
    u64 total = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) {
        EXPECT_LE(mult[i], 1u);
        total += mult[i] * T.degree(i);
    }
    EXPECT_EQ(Cyclotomic(static_cast<long>(total)), g.values[0]);
    EXPECT_EQ(total, 16u);  // |GL_2(3)|_{3'}
}

TEST(Gggr, MatchesBruteInductionAndTables) {
    for (const char* s : {"SL(2,3,+1)", "SL(2,5,+1)", "SL(2,7,+1)", "SL(2,9,+1)", "GL(2,3,+1)", "GL(2,5,+1)",
                          "SL(3,3,+1)"}) {
        GroupRef G = E(s);
        const CharacterTable& T = table(s);
        for (const auto& part : partitions(G->degree(), G->degree())) {
            NilpotentData nil = nilpotent_data(G->field(), part);
            ClassFunction g = gggr_character(G, nil);
            if (G->order() <= 6000) {
                ClassFunction b = brute_gggr(G, nil);
                EXPECT_EQ(g.values, b.values) << s << " " << nil.partition_str();
            }
            auto mult = gggr_multiplicities(T, g);  // throws on non-integers
            EXPECT_EQ(mult[0], part == std::vector<int>(G->degree(), 1) ? 1u : 0u) << s << " " << nil.partition_str();
            // Frobenius reciprocity against the restriction of each row
            Subgroup U2 = gggr_subgroup(*G, nil);
            std::vector<Cyclotomic> phi;
            for (u32 h : U2.elems) phi.push_back(phi_u(nil, G->element(h)));
            const int k = (weight_dimension(nil.weights, 1) - weight_dimension(nil.weights, 2)) / 2;
            mpq_class norm(1);
            for (int i = 0; i < k; ++i) norm /= static_cast<unsigned long>(G->field()->q());
            for (std::size_t r = 0; r < T.rows(); ++r) {
                Cyclotomic lhs = subgroup_inner_product(U2, phi, restrict_to(T.character(r), U2)).scaled(norm);
                EXPECT_EQ(lhs, Cyclotomic(static_cast<long>(mult[r]))) << s << " row " << r;
            }
            EXPECT_TRUE(gggr_value_field(g, G->degree(), G->field()->q(), 1).quadratic_ok) << s;
        }
    }
}

TEST(Gggr, DependsOnlyOnClass) {
    GroupRef G = E("SL(3,3,+1)");
    NilpotentData nil = nilpotent_data(G->field(), {2, 1});
    ClassFunction g = gggr_character(G, nil);
    const u32 cls = G->class_of(G->find(nil.u));
    std::size_t same = 0;
    std::vector<std::pair<int, int>> pos;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            if (nil.weights[j] - nil.weights[k] == 2) pos.emplace_back(j, k);
    for (u64 code = 1; code < 9; ++code) {
        Matrix e(G->field(), 3);
        u64 c = code;
        for (auto [j, k] : pos) {
            e(j, k) = static_cast<Elem>(c % 3);
            c /= 3;
        }
        NilpotentData other = with_nilpotent(nil, e);
        u32 i = G->find(other.u);
        if (i == kNoElement || G->class_of(i) != cls) continue;
        ++same;
        EXPECT_EQ(gggr_character(G, other).values, g.values) << to_literal(e);
    }
    EXPECT_GE(same, 2u);
}

TEST(Gggr, GaloisActionSL25) {
    GroupRef G = E("SL(2,5,+1)");
    NilpotentData a = nilpotent_data(G->field(), {2});
    NilpotentData b = with_nilpotent(a, scale(a.e, 2));  // 2 is a non-square mod 5
    ClassFunction ga = gggr_character(G, a), gb = gggr_character(G, b);
    EXPECT_NE(ga.values, gb.values);
    for (const NilpotentData* nil : {&a, &b}) {
        EXPECT_TRUE(verify_gggr_galois(G, *nil, {5, 1}).holds);
        GggrGaloisCheck c = verify_gggr_galois(G, *nil, sigma_map(5));
        EXPECT_TRUE(c.holds);
        EXPECT_EQ(c.k, 2);
    }
    // sigma swaps the two regular characters
    for (std::size_t c = 0; c < ga.values.size(); ++c) EXPECT_EQ(galois_apply(ga.values[c], sigma_map(5)), gb.values[c]);
}

TEST(Gggr, GaloisActionSL33Subregular) {
    GroupRef G = E("SL(3,3,+1)");
    NilpotentData nil = nilpotent_data(G->field(), {2, 1});
    GggrGaloisCheck c = verify_gggr_galois(G, nil, sigma_map(3));
    EXPECT_TRUE(c.holds);
    ClassFunction g = gggr_character(G, nil);
    const u32 u = G->find(nil.u);
    EXPECT_EQ(G->class_of(u), G->class_of(G->power(u, 2)));
    for (const auto& v : g.values) EXPECT_EQ(galois_apply(v, sigma_map(3)), v);
}

TEST(Gggr, GaloisActionPowerMaps) {
    for (const char* s : {"SL(2,7,+1)", "GL(2,5,+1)", "SL(3,3,+1)", "SL(2,9,+1)"}) {
        GroupRef G = E(s);
        const i64 p = static_cast<i64>(G->field()->p());
        for (const auto& part : partitions(G->degree(), G->degree()))
            for (i64 k = 1; k < p; ++k) {
                GggrGaloisCheck c = verify_gggr_galois(G, nilpotent_data(G->field(), part), {static_cast<u64>(p), k});
                EXPECT_TRUE(c.holds) << s << " k=" << k;
            }
    }
}

TEST(Gggr, ValueFields) {
    GroupRef G = E("SL(2,9,+1)");
    ClassFunction g = gggr_character(G, nilpotent_data(G->field(), {2}));
    ValueFieldReport v = gggr_value_field(g, 2, 9, 1);
    EXPECT_TRUE(v.integer_claim);
    EXPECT_TRUE(v.all_integers);
    EXPECT_TRUE(v.holds());
    ClassFunction reg = gggr_character(G, nilpotent_data(G->field(), {1, 1}));
    EXPECT_TRUE(gggr_value_field(reg, 2, 9, 1).all_integers);
    GroupRef G5 = E("SL(2,5,+1)");
    ValueFieldReport v5 = gggr_value_field(gggr_character(G5, nilpotent_data(G5->field(), {2})), 2, 5, 1);
    EXPECT_EQ(v5.eta, 1);
    EXPECT_TRUE(v5.quadratic_ok);
    EXPECT_FALSE(v5.all_integers);
}

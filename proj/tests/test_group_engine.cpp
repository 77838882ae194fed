#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "selfnorm/group_data.hpp"

using namespace selfnorm;

namespace {

GroupRef E(const char* s) { return GroupData::enumerate(GroupSpec::parse(s)); }

// Class partition computed by conjugating with every element (quadratic oracle).
std::vector<std::set<u32>> brute_classes(const GroupData& G) {
    std::vector<int> seen(G.order(), -1);
    std::vector<std::set<u32>> out;
    for (u32 x = 0; x < G.order(); ++x) {
        if (seen[x] >= 0) continue;
        std::set<u32> cl;
        Matrix X = G.element(x);
        for (u32 g = 0; g < G.order(); ++g) {
            Matrix M = G.element(g);
            cl.insert(G.find(M * X * inverse(M)));
        }
        for (u32 y : cl) seen[y] = static_cast<int>(out.size());
        out.push_back(cl);
    }
    return out;
}

std::size_t count_involutions(const GroupData& G, const Subgroup& H) {
    std::size_t k = 0;
    for (u32 x : H.elems)
        if (x != G.identity() && G.mul(x, x) == G.identity()) ++k;
    return k;
}

}  // namespace

TEST(GroupEngine, EnumerationOrders) {
    EXPECT_EQ(E("SL(2,3,+1)")->order(), 24u);
    EXPECT_EQ(E("GL(2,3,+1)")->order(), 48u);
    EXPECT_EQ(E("SL(3,3,+1)")->order(), 5616u);
    for (const char* s : {"GU(2,3,-1)", "SU(3,2,-1)", "PSU(3,3,-1)", "PSL(2,9,+1)", "PGL(2,5,+1)", "GU(1,7,-1)",
                          "SL(2,8,+1)", "GL(1,13,+1)", "SL(1,5,+1)"}) {
        auto spec = GroupSpec::parse(s);
        EXPECT_EQ(E(s)->order(), group_order_u64(spec)) << s;
    }
}

TEST(GroupEngine, ElementsAreExactlyTheGroup) {
    // every stored element belongs to the spec, and they are pairwise distinct
    for (const char* s : {"GU(2,3,-1)", "PSL(2,7,+1)", "SU(2,5,-1)"}) {
        auto spec = GroupSpec::parse(s);
        auto G = E(s);
        std::set<std::vector<Elem>> distinct;
        for (u32 i = 0; i < G->order(); ++i) {
            EXPECT_TRUE(contains(spec, G->element(i)));
            distinct.insert(G->element(i).a);
        }
        EXPECT_EQ(distinct.size(), G->order());
    }
}

TEST(GroupEngine, BudgetAndBadGenerators) {
    EXPECT_THROW(GroupData::enumerate(GroupSpec::parse("SL(4,3,+1)")), BudgetExceeded);
    EXPECT_THROW(GroupData::enumerate(GroupSpec::parse("GL(2,5,+1)"), 100), BudgetExceeded);
    auto F = FiniteField::get(5, 1);
    Matrix sing(F, 2);
    sing(0, 0) = 1;
    EXPECT_THROW(GroupData::from_generators(F, 2, {sing}), InvalidArgument);
    Matrix big = Matrix::identity(F, 2);
    big(0, 1) = 1;
    Matrix d = Matrix::diag(F, {2, 1});
    try {
        GroupData::from_generators(F, 2, {big, d}, 10);
        FAIL();
    } catch (const BudgetExceeded& e) {
        EXPECT_NE(std::string(e.what()).find("found so far"), std::string::npos);
    }
}

TEST(GroupEngine, ClassCounts) {
    EXPECT_EQ(E("SL(2,3,+1)")->class_count(), 7u);
    EXPECT_EQ(E("GL(2,3,+1)")->class_count(), 8u);
    EXPECT_EQ(E("PSL(2,5,+1)")->class_count(), 5u);
    EXPECT_EQ(E("PSL(2,7,+1)")->class_count(), 6u);
    auto F = FiniteField::get(17, 1);
    Elem z = F->root_of_unity(8);
    auto C8 = GroupData::from_generators(F, 2, {Matrix::diag(F, {z, F->inv(z)})});
    EXPECT_EQ(C8->order(), 8u);
    EXPECT_EQ(C8->class_count(), 8u);
    EXPECT_EQ(C8->center().size(), 8u);
}

TEST(GroupEngine, ClassesMatchBruteConjugation) {
    for (const char* s : {"SL(2,3,+1)", "GL(2,3,+1)", "PSL(2,5,+1)", "GU(2,3,-1)", "PGL(2,5,+1)", "SU(3,2,-1)"}) {
        auto G = E(s);
        auto bc = brute_classes(*G);
        ASSERT_EQ(bc.size(), G->class_count()) << s;
        for (const auto& cl : bc) {
            u32 c = G->class_of(*cl.begin());
            EXPECT_EQ(G->class_size(c), cl.size());
            for (u32 y : cl) EXPECT_EQ(G->class_of(y), c);
        }
    }
}

TEST(GroupEngine, ClassInvariantsAndOrdering) {
    std::mt19937 rng(3);
    for (const char* s : {"SL(3,3,+1)", "GL(2,7,+1)", "PSU(3,3,-1)", "SL(2,8,+1)"}) {
        auto G = E(s);
        u64 total = 0;
        for (std::size_t c = 0; c < G->class_count(); ++c) {
            total += G->class_size(c);
            EXPECT_EQ(G->class_size(c) * G->centralizer_order(c), G->order());
            EXPECT_EQ(G->class_order(c), G->element_order(G->class_rep(c)));
            if (c > 0) {
                EXPECT_LE(G->class_order(c - 1), G->class_order(c));
                if (G->class_order(c - 1) == G->class_order(c)) EXPECT_LE(G->class_size(c - 1), G->class_size(c));
            }
            auto m = G->class_members(c);
            EXPECT_TRUE(std::find(m.begin(), m.end(), G->class_rep(c)) != m.end());
            for (u32 x : m) EXPECT_FALSE(G->element(x) < G->element(G->class_rep(c)));
        }
        EXPECT_EQ(total, G->order());
        EXPECT_EQ(G->class_of(G->identity()), 0u);
        for (int t = 0; t < 300; ++t) {
            u32 x = rng() % G->order(), g = rng() % G->order();
            EXPECT_EQ(G->class_of(G->conj(g, x)), G->class_of(x));
        }
    }
    // SL_3(3) has no element of order 9 (exponent 2^3 * 3 * 13)
    auto S = E("SL(3,3,+1)");
    EXPECT_EQ(S->exponent(), 8u * 3 * 13);
    EXPECT_EQ(S->class_count(), 12u);
}

TEST(GroupEngine, DeterministicRebuild) {
    auto a = E("PSU(3,3,-1)");
    auto b = E("PSU(3,3,-1)");
    for (std::size_t c = 0; c < a->class_count(); ++c) EXPECT_EQ(a->element(a->class_rep(c)), b->element(b->class_rep(c)));
}

TEST(GroupEngine, CenterAndPowerMaps) {
    auto G = E("SL(2,5,+1)");
    ASSERT_EQ(G->center().size(), 2u);
    EXPECT_TRUE(G->element(G->center()[1]).is_scalar());
    auto GL = E("GL(2,5,+1)");
    EXPECT_EQ(GL->center().size(), 4u);
    auto pm = G->power_map(2);
    for (std::size_t c = 0; c < G->class_count(); ++c) {
        u32 r = G->class_rep(c);
        EXPECT_EQ(pm[c], G->class_of(G->mul(r, r)));
    }
    auto p1 = G->power_map(static_cast<i64>(G->exponent()) + 1);
    for (std::size_t c = 0; c < G->class_count(); ++c) EXPECT_EQ(p1[c], c);
}

TEST(GroupEngine, Normalizers) {
    auto A5 = E("PSL(2,5,+1)");
    auto P = sylow_2_generic(*A5);
    EXPECT_EQ(P.order(), 4u);
    EXPECT_EQ(count_involutions(*A5, P), 3u);
    EXPECT_EQ(normalizer(*A5, P).order(), 12u);
    EXPECT_EQ(normalizer(*A5, whole_group(*A5)).order(), 60u);

    auto GL27 = E("GL(2,7,+1)");
    auto P7 = sylow_2_generic(*GL27);
    EXPECT_EQ(P7.order(), 32u);
    EXPECT_EQ(normalizer(*GL27, P7).order(), 96u);

    // A6 = PSL_2(9): a Sylow 2-subgroup is dihedral of order 8 (5 involutions) and self-normalising
    auto A6 = E("PSL(2,9,+1)");
    auto P9 = sylow_2_generic(*A6);
    EXPECT_EQ(P9.order(), 8u);
    EXPECT_EQ(count_involutions(*A6, P9), 5u);
    EXPECT_EQ(normalizer(*A6, P9), P9);
}

TEST(GroupEngine, SylowSubgroups) {
    auto S = E("SL(2,3,+1)");
    auto P = sylow_2_generic(*S);
    EXPECT_EQ(P.order(), 8u);
    EXPECT_EQ(count_involutions(*S, P), 1u);  // quaternion
    EXPECT_TRUE(is_normal(*S, P));
    auto L = E("PSL(2,7,+1)");
    auto D = sylow_2_generic(*L);
    EXPECT_EQ(D.order(), 8u);
    EXPECT_EQ(count_involutions(*L, D), 5u);  // dihedral
    EXPECT_EQ(sylow_2_generic(*E("GL(2,5,+1)")).order(), 32u);
    // a 2-group: every element has 2-power order
    for (u32 x : D.elems) EXPECT_TRUE(is_power_of_two(L->element_order(x)));
}

TEST(GroupEngine, SubgroupsAndCentralizers) {
    auto G = E("GL(2,3,+1)");
    auto Z = subgroup_from_elements(*G, G->center());
    EXPECT_EQ(Z.order(), 2u);
    EXPECT_EQ(centralizer(*G, Z).order(), 48u);
    EXPECT_EQ(centralizer(*G, whole_group(*G)), Z);
    u32 x3 = kNoElement;
    for (u32 x = 0; x < G->order() && x3 == kNoElement; ++x)
        if (G->element_order(x) == 3) x3 = x;
    EXPECT_THROW(subgroup_from_elements(*G, {0, x3}), InvalidArgument);
}

TEST(GroupEngine, CentralQuotients) {
    auto S = E("SL(2,5,+1)");
    auto Q = quotient_by_central(S, S->center());
    EXPECT_EQ(Q.group->order(), 60u);
    std::mt19937 rng(5);
    for (int t = 0; t < 1000; ++t) {
        u32 a = rng() % S->order(), b = rng() % S->order();
        ASSERT_EQ(Q.proj[S->mul(a, b)], Q.group->mul(Q.proj[a], Q.proj[b]));
    }
    auto cp = Q.class_proj();
    for (u32 x = 0; x < S->order(); ++x) EXPECT_EQ(Q.group->class_of(Q.proj[x]), cp[S->class_of(x)]);

    auto S33 = E("SL(3,3,+1)");
    EXPECT_EQ(quotient_by_central(S33, {S33->identity()}).group->order(), 5616u);
    auto G = E("GL(2,3,+1)");
    EXPECT_EQ(quotient_by_central(G, G->center()).group->order(), 24u);
    // non-central element rejected
    u32 x = G->class_rep(G->class_count() - 1);
    EXPECT_THROW(quotient_by_central(G, {x}), InvalidArgument);
}

TEST(GroupEngine, CacheOnlyAffectsSpeed) {
    auto dir = std::filesystem::temp_directory_path() / "selfnorm-cache-test";
    std::filesystem::remove_all(dir);
    auto spec = GroupSpec::parse("GU(2,5,-1)");
    auto a = GroupData::enumerate(spec, kEnumerationBudget, dir.string());
    EXPECT_TRUE(std::filesystem::exists(dir / "GU(2,5,-1).grp"));
    auto b = GroupData::enumerate(spec, kEnumerationBudget, dir.string());
    auto c = GroupData::enumerate(spec);
    ASSERT_EQ(a->order(), b->order());
    for (u32 i = 0; i < a->order(); ++i) ASSERT_EQ(a->element(i), b->element(i));
    ASSERT_EQ(b->class_count(), c->class_count());
    for (std::size_t k = 0; k < b->class_count(); ++k) EXPECT_EQ(b->element(b->class_rep(k)), c->element(c->class_rep(k)));
    // a corrupted file is ignored
    {
        std::ofstream f(dir / "GU(2,5,-1).grp", std::ios::binary | std::ios::trunc);
        f << "selfnorm-group-table 1 GU(2,5,-1) 720 2\nxx";
    }
    EXPECT_EQ(GroupData::enumerate(spec, kEnumerationBudget, dir.string())->order(), 720u);
    std::filesystem::remove_all(dir);
}

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "selfnorm/verifier.hpp"

using namespace selfnorm;

namespace {

Record run(const std::string& line, u64 budget = kEnumerationBudget) {
    RunOptions o;
    o.budget = budget;
    return run_entry(parse_entry(line), o);
}

int error_line(const std::string& text) {
    try {
        parse_config(text, "t.catalog");
    } catch (const ConfigError& e) {
        return e.line;
    }
    return -1;
}

int error_column(const std::string& line) {
    try {
        parse_entry(line, "t", 1);
    } catch (const ConfigError& e) {
        return e.column;
    }
    return -1;
}

}  // namespace

TEST(Verifier, ParsesEntries) {
    auto cat = parse_config(
        "# comment\n"
        "\n"
        "check=navarro spec=PSL(2,7,+1)   # trailing comment\n"
        "  spec=GL(2,3,+1) check=table budget=5000 expect=PASS\n",
        "t.catalog");
    ASSERT_EQ(cat.size(), 2u);
    EXPECT_EQ(cat[0].line, 3);
    EXPECT_EQ(cat[0].source, "t.catalog:3");
    EXPECT_EQ(cat[0].text(), "check=navarro spec=PSL(2,7,+1)");
    EXPECT_EQ(cat[1].check, "table");
    EXPECT_EQ(cat[1].text(), "check=table spec=GL(2,3,+1)");
    EXPECT_EQ(cat[1].budget, 5000u);
    EXPECT_EQ(cat[1].expect, Verdict::Pass);
    EXPECT_EQ(cat[1].get("spec"), "GL(2,3,+1)");
    EXPECT_FALSE(cat[1].get("Q"));
}

TEST(Verifier, ConfigErrorsCarryPositions) {
    EXPECT_EQ(error_line("check=table spec=GL(2,3,+1)\n\ncheck=table spec=GL(2,3\n"), 3);
    EXPECT_EQ(error_line("check=bogus\n"), 1);
    EXPECT_EQ(error_line("check=table\n"), 1);  // missing spec
    // malformed spec: the column points at the value, the message at the position inside it
    try {
        parse_entry("check=navarro spec=SL(2,x,+1)", "t", 7);
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line, 7);
        EXPECT_EQ(e.column, 20);
        EXPECT_NE(std::string(e.what()).find("position"), std::string::npos) << e.what();
    }
    EXPECT_EQ(error_column("check=navarro spec=PSL(2,7,+1) Q=trivial"), 32);  // key not valid for navarro
    EXPECT_EQ(error_column("check=table spec=GL(2,3,+1) spec=GL(2,5,+1)"), 29);
    EXPECT_EQ(error_column("check=table spec"), 13);
    EXPECT_EQ(error_column("check=sylow n=2 q=3 eps=2"), 25);
    EXPECT_EQ(error_column("check=witness n=5 q=7 eps=+1 Q=field:m=x"), 32);
    EXPECT_EQ(error_column("check=table spec=GL(2,3,+1) expect=MAYBE"), 36);
}

TEST(Verifier, NavarroExamples) {
    Record a5 = run("check=navarro spec=PSL(2,5,+1)");
    EXPECT_EQ(a5.verdict, Verdict::Pass);
    EXPECT_FALSE(a5.evidence["lhs_self_normalising"].get<bool>());
    EXPECT_FALSE(a5.evidence["rhs_all_odd_sigma_fixed"].get<bool>());
    EXPECT_EQ(a5.evidence["normalizer_order"], 12);
    EXPECT_EQ(a5.evidence["sigma_moved_odd_rows"].size(), 2u);  // the two degree-3 rows

    Record l7 = run("check=navarro spec=PSL(2,7,+1)");
    EXPECT_EQ(l7.verdict, Verdict::Pass);
    EXPECT_TRUE(l7.evidence["lhs_self_normalising"].get<bool>());
    EXPECT_TRUE(l7.evidence["rhs_all_odd_sigma_fixed"].get<bool>());

    Record s8 = run("check=navarro spec=SL(2,8,+1)");
    EXPECT_EQ(s8.verdict, Verdict::Pass);
    EXPECT_EQ(s8.evidence["normalizer_order"].get<u64>() / s8.evidence["sylow_order"].get<u64>(), 7u);
    EXPECT_FALSE(s8.evidence["rhs_all_odd_sigma_fixed"].get<bool>());

    Record sl29 = run("check=navarro spec=SL(2,9,+1)");
    EXPECT_EQ(sl29.evidence["formulation"], "N_G(P) = PZ");
    EXPECT_EQ(sl29.evidence["pz_order"], 16);
}

TEST(Verifier, FixedPointConditionExamples) {
    Record a = run("check=fi spec=PSL(2,7,+1) Q=trivial");
    EXPECT_EQ(a.verdict, Verdict::Pass);
    EXPECT_TRUE(a.evidence["c_centralizer_trivial"].get<bool>());

    Record b = run("check=fi spec=PSL(2,9,+1) Q=field:m=1");
    EXPECT_EQ(b.verdict, Verdict::Pass);
    EXPECT_TRUE(b.evidence.contains("h_invariant_rows_sigma_fixed"));
    EXPECT_TRUE(b.evidence["c_centralizer_trivial"].get<bool>());

    Record c = run("check=fi spec=PSL(3,3,+1) Q=trivial");
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.evidence["normalizer_quotient_order"], 1);

    // A_5: C_{N/P}(1) = C_3, and h is false, so the implication is vacuous
    Record d = run("check=fi spec=PSL(2,5,+1)");
    EXPECT_EQ(d.verdict, Verdict::Pass);
    EXPECT_FALSE(d.evidence["c_centralizer_trivial"].get<bool>());
    EXPECT_FALSE(d.evidence["h_invariant_rows_sigma_fixed"].get<bool>());

    // the graph automorphism does not normalise the generic Sylow subgroup; it is repaired
    Record g = run("check=fi spec=PSL(3,3,+1) Q=graph");
    EXPECT_EQ(g.verdict, Verdict::Pass);
    for (const auto& r : g.evidence["repairs"]) EXPECT_TRUE(r.contains("conjugator"));

    Record bad = run("check=fi spec=SL(2,7,+1)");
    EXPECT_EQ(bad.verdict, Verdict::Fail);
    EXPECT_TRUE(bad.evidence.contains("error"));
}

TEST(Verifier, InvariantCharacterConditionExamples) {
    Record a = run("check=if spec=SL(2,7,+1) Q=trivial lambda=0");
    EXPECT_EQ(a.verdict, Verdict::Pass);
    EXPECT_GT(a.evidence["q_invariant_odd_rows_over_lambda"].size(), 0u);

    Record b = run("check=if spec=SL(2,9,+1) Q=field:m=1 lambda=1");
    EXPECT_EQ(b.verdict, Verdict::Pass);
    // a faithful character of SL_2(9) has even degree, so nothing odd lies over lambda
    EXPECT_EQ(b.evidence["q_invariant_odd_rows_over_lambda"].size(), 0u);

    Record c = run("check=if spec=SL(2,5,+1) Q=trivial");
    EXPECT_EQ(c.verdict, Verdict::Skip);
    EXPECT_NE(c.summary.find("hypothesis not met"), std::string::npos);

    EXPECT_EQ(run("check=if spec=SL(2,7,+1) lambda=2").verdict, Verdict::Fail);  // |Z| = 2
}

TEST(Verifier, SylowAndCriterionChecks) {
    Record cf = run("check=sylow n=2 q=3 eps=+1");
    EXPECT_EQ(cf.verdict, Verdict::Pass);
    EXPECT_EQ(cf.evidence["sylow_order"], "16");
    EXPECT_EQ(cf.evidence["normalizer_order"], 16);

    EXPECT_EQ(run("check=sn2s spec=PSL(3,3,+1)").verdict, Verdict::Pass);
    Record a5 = run("check=sn2s spec=PSL(2,5,+1)");
    EXPECT_EQ(a5.verdict, Verdict::Finding);
    EXPECT_FALSE(a5.evidence["oracle_self_normalising"].get<bool>());
    EXPECT_EQ(run("check=normalizer spec=PSL(2,9,+1) order=8").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=normalizer spec=PSL(2,9,+1) order=16").verdict, Verdict::Fail);

    EXPECT_EQ(run("check=wreath r=1 q=5 eps=+1").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=wreath r=0 q=3 eps=+1").verdict, Verdict::Fail);
}

TEST(Verifier, BudgetOverrunsAreSkips) {
    Record r = run("check=navarro spec=GL(3,5,+1)", 100000);
    EXPECT_EQ(r.verdict, Verdict::Skip);
    EXPECT_EQ(r.evidence["skipped"], "budget");
    Record e = run("check=table spec=GL(2,5,+1) budget=100");
    EXPECT_EQ(e.verdict, Verdict::Skip);
    EXPECT_NE(e.repro.find("budget=100"), std::string::npos);
}

TEST(Verifier, WitnessRecords) {
    Record built = run("check=witness n=5 q=7 eps=+1 Q=trivial");
    EXPECT_EQ(built.verdict, Verdict::Pass);
    EXPECT_TRUE(built.evidence["certificates_replay"].get<bool>());
    EXPECT_TRUE(built.evidence["S"]["S4"]["holds"].get<bool>());

    Record refused = run("check=witness n=4 q=5 eps=+1");
    EXPECT_EQ(refused.verdict, Verdict::Pass);
    EXPECT_EQ(refused.evidence["refused_conditions"][0], 1);

    Record fld = run("check=witness n=3 q=9 eps=+1 Q=field:m=1");
    EXPECT_EQ(fld.verdict, Verdict::Pass);

    EXPECT_EQ(run("check=semisimple spec=GU(3,2,-1)").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=preimage spec=PGL(2,7,+1)").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=preimage spec=PGL(3,7,+1) s=GF(7):[g^2,0,0;0,g^2,0;0,0,g^0]").verdict, Verdict::Finding);
    EXPECT_EQ(run("check=torus n=2 q=2 eps=+1").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=torus n=2 q=4 eps=+1").verdict, Verdict::Pass);
    EXPECT_EQ(run("check=torus n=3 q=2 eps=-1").verdict, Verdict::Fail);  // computed degenerate
    EXPECT_EQ(run("check=sl4torus q=5 twisted=1").verdict, Verdict::Pass);
}

TEST(Verifier, GggrRecords) {
    Record reg = run("check=gggr spec=GL(2,3,+1) partition=1,1");
    EXPECT_EQ(reg.verdict, Verdict::Pass);
    EXPECT_TRUE(reg.evidence["regular_character"].get<bool>());
    Record sl29 = run("check=gggr spec=SL(2,9,+1) partition=2");
    EXPECT_EQ(sl29.verdict, Verdict::Pass);
    EXPECT_TRUE(sl29.evidence["value_field"]["all_integers"].get<bool>());
    Record sl23 = run("check=gggr spec=SL(2,3,+1) partition=2");
    EXPECT_EQ(sl23.evidence["value_field"]["eta"], -1);
    EXPECT_TRUE(sl23.evidence["value_field"]["quadratic"].get<bool>());
    EXPECT_FALSE(sl23.evidence["value_field"]["all_integers"].get<bool>());
}

TEST(Verifier, ExpectationsAndExitStatus) {
    auto cat = parse_config(
        "check=wreath r=0 q=3 eps=+1 expect=FAIL\n"
        "check=wreath r=1 q=3 eps=+1\n");
    auto recs = run_catalog(cat, {});
    EXPECT_EQ(recs[0].verdict, Verdict::Fail);
    EXPECT_TRUE(recs[0].expectation_met);
    EXPECT_FALSE(run_failed(recs));
    auto bad = run_catalog(parse_config("check=wreath r=1 q=3 eps=+1 expect=FAIL\n"), {});
    EXPECT_TRUE(run_failed(bad));
    auto plain = run_catalog(parse_config("check=wreath r=0 q=3 eps=+1\n"), {});
    EXPECT_TRUE(run_failed(plain));
    std::string text = report_text(plain);
    EXPECT_NE(text.find("repro: selfnorm verify --entry 'check=wreath r=0 q=3 eps=+1'"), std::string::npos);
    EXPECT_NE(text.find("Result: FAILED"), std::string::npos);
}

TEST(Verifier, ReportsAreDeterministic) {
    auto cat = parse_config(
        "check=navarro spec=PSL(2,7,+1)\n"
        "check=table spec=SL(2,5,+1)\n"
        "check=galois spec=GL(2,3,+1)\n"
        "check=sn2s spec=PSL(2,5,+1)\n"
        "check=witness n=5 q=7 eps=+1\n"
        "check=gggr spec=SL(2,5,+1) partition=2\n");
    RunOptions one, three;
    three.jobs = 3;
    ReportOptions nt;
    nt.timing = false;
    auto a = run_catalog(cat, one), b = run_catalog(cat, three);
    EXPECT_EQ(report_json(a, nt).dump(2), report_json(b, nt).dump(2));
    EXPECT_EQ(report_text(a, nt), report_text(b, nt));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].index, i + 1);

    Json with = report_json(a);
    EXPECT_TRUE(with.contains("wall_ms_total"));
    EXPECT_TRUE(with["records"][0].contains("wall_ms"));
    Json without = report_json(a, nt);
    EXPECT_FALSE(without.contains("wall_ms_total"));
    EXPECT_FALSE(without["records"][0].contains("wall_ms"));
    EXPECT_EQ(without["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(without["totals"]["FINDING"], 1);
}

TEST(Verifier, DefaultCatalog) {
    std::ifstream in(std::string(SELFNORM_SOURCE_DIR) + "/data/default.catalog");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), default_catalog_text());
    auto cat = default_catalog();
    std::set<std::string> navarro;
    bool even = false, odd = false;
    for (const auto& e : cat) {
        if (e.check != "navarro") continue;
        GroupSpec s = GroupSpec::parse(*e.get("spec"));
        navarro.insert(s.str());
        (s.p() == 2 ? even : odd) = true;
    }
    EXPECT_GE(navarro.size(), 12u);
    EXPECT_TRUE(even && odd);
    for (const auto& k : check_kinds()) {
        bool used = std::any_of(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.check == k.name; });
        EXPECT_TRUE(used) << k.name;
    }
}

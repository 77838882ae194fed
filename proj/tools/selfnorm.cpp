#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "selfnorm/character_table.hpp"
#include "selfnorm/galois_action.hpp"
#include "selfnorm/sylow_two.hpp"
#include "selfnorm/verifier.hpp"

using namespace selfnorm;

namespace {

struct Global {
    std::string report = "text";
    u64 budget = kEnumerationBudget;
    std::string cache;
    std::string output;
    bool timing = true;
};

RunOptions run_options(const Global& g, unsigned jobs = 1) {
    RunOptions o;
    o.budget = g.budget;
    o.cache_dir = g.cache;
    o.jobs = jobs;
    return o;
}

void emit(const Global& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw InvalidArgument("cannot write " + g.output);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_records(const Global& g, const std::vector<Record>& recs) {
    ReportOptions ro;
    ro.timing = g.timing;
    if (g.report == "json") return report_json(recs, ro).dump(2) + "\n";
    return report_text(recs, ro);
}

// A single record with its full evidence, for the inspection subcommands.
std::string format_single(const Global& g, const Record& r) {
    std::vector<Record> recs{r};
    recs[0].index = 1;
    if (g.report == "json") return format_records(g, recs);
    std::ostringstream os;
    os << verdict_name(r.verdict) << "  " << r.check << "  " << r.subject << "\n"
       << "anchor:   " << r.anchor << "\n"
       << "summary:  " << r.summary << "\n"
       << "evidence: " << r.evidence.dump(2) << "\n";
    if (record_fails(r)) os << "repro:    " << r.repro << "\n";
    return os.str();
}

int run_single(const Global& g, const std::string& entry, std::string prefix = "") {
    Record r = run_entry(parse_entry(entry, "<command line>", 1), run_options(g));
    emit(g, prefix + format_single(g, r));
    return record_fails(r) ? 1 : 0;
}

std::string eps_text(int eps) { return eps == 1 ? "+1" : "-1"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"selfnorm: exact checks on Sylow 2-subgroups, characters and witnesses in groups of type A"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--report", g.report, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget", g.budget, "Largest group order that may be enumerated");
    app.add_option("--cache", g.cache, "Directory for cached element tables");
    app.add_option("-o,--output", g.output, "Write the report to a file instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a catalog of checks (the default catalog without --config/--entry)");
    verify->fallthrough();
    std::vector<std::string> configs, entries;
    unsigned jobs = 1;
    bool no_timing = false, print_catalog = false, list_checks = false;
    verify->add_option("-c,--config", configs, "Catalog file (repeatable)");
    verify->add_option("-e,--entry", entries, "A single catalog line (repeatable)");
    verify->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    verify->add_flag("--no-timing", no_timing, "Leave out timing fields (reports become byte-comparable)");
    verify->add_flag("--print-catalog", print_catalog, "Print the default catalog and exit");
    verify->add_flag("--list-checks", list_checks, "List check kinds and their keys and exit");

    // table
    auto* table = app.add_subcommand("table", "Character table of an enumerated group");
    table->fallthrough();
    std::string table_spec;
    table->add_option("spec", table_spec, "Group, e.g. PSL(2,7,+1)")->required();

    // sylow
    auto* sylow = app.add_subcommand("sylow", "Constructed Sylow 2-subgroup of GL_n^eps(q), q odd");
    sylow->fallthrough();
    int sn = 2, seps = 1;
    u64 sq = 3;
    bool brute = false;
    sylow->add_option("-n", sn, "Degree")->required();
    sylow->add_option("-q", sq, "Field size (odd)")->required();
    sylow->add_option("--eps", seps, "+1 (GL) or -1 (GU)")->check(CLI::IsMember({1, -1}));
    sylow->add_flag("--brute", brute, "Also compare with the brute-force normaliser");

    // galois
    auto* galois = app.add_subcommand("galois", "Action of sigma (or z -> z^k) on the rows of a character table");
    galois->fallthrough();
    std::string galois_spec;
    long long galois_k = 0;
    galois->add_option("spec", galois_spec, "Group, e.g. PSL(2,5,+1)")->required();
    galois->add_option("-k", galois_k, "Use z -> z^k instead of sigma");

    // witness
    auto* witness = app.add_subcommand("witness", "Semisimple witness element and its conditions S1-S4");
    witness->fallthrough();
    int wn = 3, weps = 1;
    u64 wq = 3;
    unsigned wm = 0;
    std::string wQ = "trivial";
    bool wexp = false;
    std::string wspec;
    witness->add_option("--spec", wspec, "GL(n,q,eps) instead of -n/-q/--eps");
    witness->add_option("-n", wn, "Degree");
    witness->add_option("-q", wq, "Field size");
    witness->add_option("--eps", weps, "+1 or -1")->check(CLI::IsMember({1, -1}));
    witness->add_option("-Q,--Q", wQ, "Automorphism 2-group: trivial, or '|'-separated graph, field:m=K, diag:<matrix>");
    witness->add_option("--p2", wm, "Characteristic two: build the element from the odd part m of the degree of q");
    witness->add_flag("--experimental", wexp, "Allow the experimental q = 4 construction");

    // gggr
    auto* gggr = app.add_subcommand("gggr", "Generalised Gelfand-Graev character of a unipotent class");
    gggr->fallthrough();
    std::string gggr_spec, gggr_part;
    gggr->add_option("spec", gggr_spec, "GL or SL group, e.g. SL(3,3,+1)")->required();
    gggr->add_option("-p,--partition", gggr_part, "Jordan type, e.g. 2,1")->required();

    CLI11_PARSE(app, argc, argv);
    g.timing = !no_timing;

    try {
        if (verify->parsed()) {
            if (print_catalog) {
                std::cout << default_catalog_text();
                return 0;
            }
            if (list_checks) {
                for (const auto& k : check_kinds()) {
                    std::cout << k.name << " (" << k.anchor << "):";
                    for (const auto& r : k.required) std::cout << " " << r << "=";
                    for (const auto& o : k.optional) std::cout << " [" << o << "=]";
                    std::cout << "\n";
                }
                return 0;
            }
            std::vector<CatalogEntry> cat;
            for (const auto& path : configs) {
                auto part = parse_config(read_file(path), path);
                cat.insert(cat.end(), part.begin(), part.end());
            }
            int k = 0;
            for (const auto& e : entries) cat.push_back(parse_entry(e, "<entry>", ++k));
            if (configs.empty() && entries.empty()) cat = default_catalog();
            auto recs = run_catalog(cat, run_options(g, jobs));
            emit(g, format_records(g, recs));
            return run_failed(recs) ? 1 : 0;
        }
        if (table->parsed()) {
            GroupSpec s = GroupSpec::parse(table_spec);
            if (group_order(s) > g.budget) throw BudgetExceeded(s.str() + " is above the enumeration budget");
            GroupRef G = GroupData::shared(s, g.budget, g.cache);
            CharacterTable T = dixon_table(G);
            if (g.report == "json") {
                Json j;
                j["group"] = s.str();
                j["order"] = G->order();
                Json classes = Json::array();
                for (std::size_t c = 0; c < G->class_count(); ++c)
                    classes.push_back({{"order", G->class_order(c)},
                                       {"size", G->class_size(c)},
                                       {"representative", to_literal(G->element(G->class_rep(c)))}});
                j["classes"] = classes;
                Json rows = Json::array();
                for (std::size_t i = 0; i < T.rows(); ++i) {
                    Json row = Json::array();
                    for (const auto& v : T.row(i)) row.push_back(v.serialize());
                    rows.push_back(row);
                }
                j["rows"] = rows;
                emit(g, j.dump(2) + "\n");
            } else {
                emit(g, T.export_text());
            }
            return 0;
        }
        if (sylow->parsed()) {
            SylowDecomposition d = build_sylow(sn, sq, seps);
            std::ostringstream os;
            if (g.report == "text") {
                os << "GL_" << sn << "^" << eps_text(seps) << "(" << sq << "): 2-adic parts";
                for (int r : d.parts.r) os << " 2^" << r;
                os << "\n|P~| = " << d.order.get_str() << " (" << d.order_method << ")\n"
                   << "predicted |N(P~)| = " << d.predicted_normalizer_order.get_str() << "\n"
                   << "generators:\n";
                for (const auto& x : d.generators) os << "  " << to_literal(x) << "\n";
                os << "torus part generators:\n";
                for (const auto& z : d.z_generators) os << "  " << to_literal(z) << "\n";
            }
            if (!brute) {
                if (g.report == "json") {
                    Json j;
                    j["n"] = sn;
                    j["q"] = sq;
                    j["eps"] = seps;
                    j["parts"] = d.parts.r;
                    j["order"] = d.order.get_str();
                    j["predicted_normalizer_order"] = d.predicted_normalizer_order.get_str();
                    Json gens = Json::array();
                    for (const auto& x : d.generators) gens.push_back(to_literal(x));
                    j["generators"] = gens;
                    os << j.dump(2) << "\n";
                }
                emit(g, os.str());
                return 0;
            }
            return run_single(g, "check=sylow n=" + std::to_string(sn) + " q=" + std::to_string(sq) +
                                     " eps=" + eps_text(seps),
                              os.str());
        }
        if (galois->parsed()) {
            if (galois_k == 0) return run_single(g, "check=galois spec=" + galois_spec);
            GroupSpec s = GroupSpec::parse(galois_spec);
            if (group_order(s) > g.budget) throw BudgetExceeded(s.str() + " is above the enumeration budget");
            CharacterTable T = dixon_table(GroupData::shared(s, g.budget, g.cache));
            auto perm = galois_permutation(T, galois_k);
            if (g.report == "json") {
                Json j;
                j["group"] = s.str();
                j["k"] = galois_k;
                j["permutation"] = perm;
                j["cycles"] = permutation_str(perm);
                emit(g, j.dump(2) + "\n");
            } else {
                emit(g, s.str() + ": z -> z^" + std::to_string(galois_k) + " acts as " + permutation_str(perm) + "\n");
            }
            return 0;
        }
        if (witness->parsed()) {
            if (!wspec.empty()) {
                GroupSpec s = GroupSpec::parse(wspec);
                wn = s.n;
                wq = s.q;
                weps = s.eps;
            } else if (witness->count("-n") == 0 || witness->count("-q") == 0) {
                throw InvalidArgument("witness needs --spec or both -n and -q");
            }
            std::string base = "n=" + std::to_string(wn) + " q=" + std::to_string(wq) + " eps=" + eps_text(weps) +
                               " Q=" + wQ;
            if (wm > 0)
                return run_single(g, "check=p2witness " + base + " m=" + std::to_string(wm) +
                                         (wexp ? " experimental=1" : ""));
            return run_single(g, "check=witness " + base);
        }
        if (gggr->parsed()) return run_single(g, "check=gggr spec=" + gggr_spec + " partition=" + gggr_part);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

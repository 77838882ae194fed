#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "selfnorm/group_data.hpp"

namespace selfnorm {

using Json = nlohmann::ordered_json;

constexpr int kReportSchemaVersion = 1;

enum class Verdict { Pass, Fail, Skip, Finding };
std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

// Thrown for malformed configuration text; line and column are 1-based
// (0 when the text did not come from a file).
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& source, int line, int column, const std::string& what);
    std::string source;
    int line = 0;
    int column = 0;
};

// One line of a catalog: `check=<kind>` followed by the check's parameters.
struct CatalogEntry {
    std::string source;  // "<file>:<line>"
    int line = 0;
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;  // in the order written, without check/budget/expect
    std::optional<u64> budget;
    std::optional<Verdict> expect;

    std::optional<std::string> get(const std::string& key) const;
    // The entry in canonical form: check first, then the parameters as written.
    std::string text() const;
};

// Grammar: one entry per line; '#' starts a comment; blank lines are ignored;
// an entry is whitespace-separated `key=value` tokens with a `check` key.
// Keys are validated against the check kind.
std::vector<CatalogEntry> parse_config(const std::string& text, const std::string& source = "<config>");
CatalogEntry parse_entry(const std::string& line, const std::string& source = "<entry>", int line_no = 0);

// Names of the check kinds with their required and optional keys.
struct CheckKind {
    std::string name;
    std::string anchor;  // descriptive name of the result being checked
    std::vector<std::string> required;
    std::vector<std::string> optional;
};
const std::vector<CheckKind>& check_kinds();

// The catalog shipped with the tool (data/default.catalog).
const std::string& default_catalog_text();
std::vector<CatalogEntry> default_catalog();

struct RunOptions {
    u64 budget = kEnumerationBudget;
    std::string cache_dir;
    unsigned jobs = 1;
};

struct Record {
    std::size_t index = 0;  // 1-based position in the catalog
    std::string id;
    std::string check;
    std::string anchor;
    std::string source;
    std::string entry;
    std::string subject;  // group or parameter tuple, for the summary table
    Json inputs;
    Verdict verdict = Verdict::Skip;
    std::string summary;
    Json evidence;
    std::optional<Verdict> expected;
    bool expectation_met = true;
    std::string repro;
    double wall_ms = 0;
};

// Runs one entry. Budget overruns give SKIP; any other error gives FAIL
// with the message as evidence.
Record run_entry(const CatalogEntry& e, const RunOptions& opt);
// Entries run on opt.jobs workers; records come back in catalog order.
std::vector<Record> run_catalog(const std::vector<CatalogEntry>& entries, const RunOptions& opt);

// A record fails the run when its verdict is FAIL (without a matching
// expectation) or when an expectation is not met.
bool record_fails(const Record& r);
bool run_failed(const std::vector<Record>& records);

struct ReportOptions {
    bool timing = true;
};
Json report_json(const std::vector<Record>& records, const ReportOptions& opt = {});
std::string report_text(const std::vector<Record>& records, const ReportOptions& opt = {});

// `selfnorm verify --entry '<entry>'` with the budget when it differs from the default.
std::string repro_command(const CatalogEntry& e, const RunOptions& opt);

}  // namespace selfnorm

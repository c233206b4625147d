// Claim-suite runner: executes every numerically checkable claim as a named
// check (V1..V11) and assembles a machine-readable verification report.
#ifndef CESP_VERIFY_HPP
#define CESP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cesp/classify.hpp"
#include "cesp/sequence.hpp"

namespace cesp {

struct CheckConfig {
    std::uint64_t seed = 271828;
    std::string budget = "full";  // "full" or "small"
    int threads = 0;              // 0 = auto

    // Budget-derived sizes.
    std::int64_t hardy_N() const { return budget == "small" ? 1000 : 100000; }
    std::int64_t norm_N() const { return budget == "small" ? 1000 : 100000; }
    std::int64_t basis_max() const { return budget == "small" ? 1000 : 10000; }
    int random_families() const { return budget == "small" ? 40 : 110; }

    // Margin around the critical exponent inside which classifier-vs-grid
    // comparisons are skipped (floating-point boundary points).
    double crit_margin = 0.05;

    json to_json() const;
};

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string id;
    std::string reference;  // emitted as "paper_ref" in the report schema
    CheckStatus status = CheckStatus::Skip;
    json evidence;
    double runtime_ms = 0.0;
};

std::string check_status_name(CheckStatus s);

// Deterministic family grid shared by the grid-based checks.
const std::vector<SymbolicSequence>& example_grid();

// Seeded random families (valid parameters, never the zero sequence).
std::vector<SymbolicSequence> sample_families(std::uint64_t seed, int count);

// Exponent grids used by the membership checks.
const std::vector<double>& exact_exponent_grid();

// Grade schedules at base exponent p: Plus uses p_k = p + 1/k, Minus uses
// p_k = p - (p-1)/(k+1), k = 1..6.
std::vector<double> plus_schedule(double p);
std::vector<double> minus_schedule(double p);

struct UnknownCheck : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runs one check by id ("V1".."V11"). Throws UnknownCheck for other ids.
CheckResult run_check(const std::string& id, const CheckConfig& config);

// All checks in order V1..V11; independent checks may run concurrently
// (bounded by config.threads), results are always ordered by id.
std::vector<CheckResult> run_all(const CheckConfig& config);

// `format` is "json" or "markdown".
std::string render_report(const std::vector<CheckResult>& results, const std::string& format,
                          const CheckConfig& config);

// V1 with the Hardy constant scaled; run_check("V1") uses scale = 1. The
// scale knob exists so tests can confirm the failure path reports the
// offending exponent.
CheckResult run_hardy_check(const CheckConfig& config, double constant_scale);

}  // namespace cesp

#endif

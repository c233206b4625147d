// Command-line front end: norms, operators, classification, witnesses and the
// verification suite. All results go to stdout as a single JSON document
// (markdown on request for reports); diagnostics go to stderr.
//
// Exit codes: 0 success / all checks pass, 1 at least one check failed,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cesp/cesaro.hpp"
#include "cesp/classify.hpp"
#include "cesp/norms.hpp"
#include "cesp/sequence.hpp"
#include "cesp/verify.hpp"
#include "cesp/witness.hpp"

namespace {

using cesp::json;

cesp::SymbolicSequence parse_seq(const std::string& text) {
    return cesp::SymbolicSequence::from_json(json::parse(text));
}

json view_to_json(const cesp::TruncatedView& view) {
    json j;
    j["N"] = view.size();
    j["terms"] = view.terms;
    switch (view.tail_kind) {
        case cesp::TailKind::Zero:
            j["tail_kind"] = "ZERO";
            break;
        case cesp::TailKind::EventuallyMonotoneFrom:
            j["tail_kind"] = "EVENTUALLY_MONOTONE_FROM";
            j["monotone_from"] = view.monotone_from;
            break;
        case cesp::TailKind::Unknown:
            j["tail_kind"] = "UNKNOWN";
            break;
    }
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int verify_threads_from_env() {
    const char* env = std::getenv("CESARO_SPACES_THREADS");
    if (!env) return 0;
    try {
        return std::max(0, std::stoi(env));
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norms, averaging operators and membership classification for the "
                 "ell / ces / d sequence-space scales"};
    app.require_subcommand(1);

    std::string seq_text, space_text, claim, check_id, format = "json", out_path, budget = "full";
    std::int64_t N = 1000000;
    int iterate = 1;
    std::uint64_t seed = 271828;
    std::optional<double> p_param, q_param;

    auto* norm_cmd = app.add_subcommand("norm", "two-sided norm enclosure for a family");
    norm_cmd->add_option("--seq", seq_text, "sequence JSON")->required();
    norm_cmd->add_option("--space", space_text, "space spec, e.g. ell:2, ces:1.5, d:2")->required();
    norm_cmd->add_option("--N", N, "truncation level");

    auto* cesaro_cmd = app.add_subcommand("cesaro", "prefix averages of a truncated family");
    cesaro_cmd->add_option("--seq", seq_text, "sequence JSON")->required();
    cesaro_cmd->add_option("--N", N, "truncation length")->required();
    cesaro_cmd->add_option("--iterate", iterate, "apply the operator once or twice")
        ->check(CLI::Range(1, 2));

    auto* env_cmd = app.add_subcommand("envelope", "decreasing envelope of a truncated family");
    env_cmd->add_option("--seq", seq_text, "sequence JSON")->required();
    env_cmd->add_option("--N", N, "truncation length")->required();

    auto* classify_cmd = app.add_subcommand("classify", "membership verdict for one space");
    classify_cmd->add_option("--seq", seq_text, "sequence JSON")->required();
    classify_cmd->add_option("--space", space_text, "space spec, e.g. ell:2+, d:3-")->required();

    auto* witness_cmd = app.add_subcommand("witness", "constructive witness for a catalog claim");
    witness_cmd->add_option("--claim", claim, "claim id (see docs)")->required();
    double p_raw = 0, q_raw = 0;
    auto* popt = witness_cmd->add_option("--p", p_raw, "first exponent");
    auto* qopt = witness_cmd->add_option("--q", q_raw, "second exponent");

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    verify_cmd->add_option("--check", check_id, "single check id V1..V11");
    verify_cmd->add_option("--seed", seed, "random seed for sampled families");
    verify_cmd->add_option("--budget", budget, "small or full")
        ->check(CLI::IsMember({"small", "full"}));
    verify_cmd->add_option("--format", format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    verify_cmd->add_option("--out", out_path, "write the report to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (norm_cmd->parsed()) {
            const auto seq = parse_seq(seq_text);
            const auto spec = cesp::parse_space(space_text);
            if (spec.grade != cesp::GradeKind::Exact)
                throw std::invalid_argument(
                    "norms exist only at exact grades; the p+ and p- spaces are non-normable");
            cesp::NormEnclosure e;
            switch (spec.scale) {
                case cesp::Scale::Ell:
                    e = cesp::lp_norm(seq, spec.p, N);
                    break;
                case cesp::Scale::Ces:
                    e = cesp::ces_norm(seq, spec.p, N);
                    break;
                case cesp::Scale::D:
                    e = cesp::d_norm(seq, spec.p, N);
                    break;
            }
            emit(cesp::enclosure_to_json(e));
            return 0;
        }
        if (cesaro_cmd->parsed()) {
            const auto seq = parse_seq(seq_text);
            emit(view_to_json(cesp::cesaro_iterate(cesp::truncate(seq, N), iterate)));
            return 0;
        }
        if (env_cmd->parsed()) {
            const auto seq = parse_seq(seq_text);
            const auto tail = seq.tail_sup(N);
            if (!tail)
                throw std::invalid_argument(
                    "unbounded sequence: the envelope has no finite tail supremum");
            emit(view_to_json(cesp::envelope(cesp::truncate(seq, N), *tail)));
            return 0;
        }
        if (classify_cmd->parsed()) {
            const auto seq = parse_seq(seq_text);
            const auto spec = cesp::parse_space(space_text);
            const auto verdict = cesp::membership(seq, spec);
            json j;
            j["status"] = verdict.status == cesp::Status::In    ? "IN"
                          : verdict.status == cesp::Status::Out ? "OUT"
                                                                : "UNSUPPORTED";
            j["crit"] = std::isinf(verdict.profile.crit) ? json("inf") : json(verdict.profile.crit);
            j["attained"] = verdict.profile.attained;
            j["space"] = cesp::format_space(spec);
            if (!verdict.note.empty()) j["note"] = verdict.note;
            emit(j);
            return 0;
        }
        if (witness_cmd->parsed()) {
            cesp::WitnessParams params;
            if (popt->count()) params.p = p_raw;
            if (qopt->count()) params.q = q_raw;
            emit(cesp::build_witness(claim, params).to_json());
            return 0;
        }
        if (verify_cmd->parsed()) {
            cesp::CheckConfig config;
            config.seed = seed;
            config.budget = budget;
            config.threads = verify_threads_from_env();
            std::vector<cesp::CheckResult> results;
            if (!check_id.empty())
                results.push_back(cesp::run_check(check_id, config));
            else
                results = cesp::run_all(config);
            const std::string report = cesp::render_report(results, format, config);
            if (out_path.empty()) {
                std::cout << report;
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
                out << report;
            }
            for (const auto& r : results)
                if (r.status == cesp::CheckStatus::Fail) return 1;
            return 0;
        }
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

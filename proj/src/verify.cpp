#include "cesp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "cesp/cesaro.hpp"
#include "cesp/norms.hpp"
#include "cesp/witness.hpp"

namespace cesp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Skip grid points whose exponent is within the crit margin but not exactly
// at the critical exponent; exact ties are decided symbolically.
bool near_boundary(const MembershipProfile& m, double p, double margin) {
    if (!std::isfinite(m.crit) || !std::isfinite(p)) return false;
    const double gap = std::abs(m.crit - p);
    return gap > 0.0 && gap <= margin;
}

struct GradePoint {
    GradeKind grade;
    double p;
};

const std::vector<GradePoint>& grade_points() {
    static const std::vector<GradePoint> pts = [] {
        std::vector<GradePoint> v;
        for (double p : {1.2, 1.5, 2.0, 2.5, 3.0, 4.0}) v.push_back({GradeKind::Exact, p});
        for (double p : {1.0, 1.5, 2.0, 3.0}) v.push_back({GradeKind::Plus, p});
        for (double p : {1.5, 2.0, 3.0, kInf}) v.push_back({GradeKind::Minus, p});
        return v;
    }();
    return pts;
}

double weighted_basis_seminorm(std::int64_t n, double t) {
    // sum_m |(e_n)_m| * m^t over a truncation that covers the support
    const SymbolicSequence e = SymbolicSequence::unit_basis(n);
    CompensatedSum s;
    for (std::int64_t m = 1; m <= n + 4; ++m)
        s.add(std::abs(e.evaluate(m)) * std::pow(static_cast<double>(m), t));
    return s.value();
}

}  // namespace

json CheckConfig::to_json() const {
    json j;
    j["seed"] = seed;
    j["budget"] = budget;
    j["threads"] = threads;
    j["crit_margin"] = crit_margin;
    j["hardy_N"] = hardy_N();
    j["norm_N"] = norm_N();
    j["basis_max"] = basis_max();
    j["random_families"] = random_families();
    return j;
}

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass:
            return "PASS";
        case CheckStatus::Fail:
            return "FAIL";
        case CheckStatus::Skip:
            return "SKIP";
    }
    return "";
}

const std::vector<SymbolicSequence>& example_grid() {
    static const std::vector<SymbolicSequence> grid = [] {
        std::vector<SymbolicSequence> g;
        for (double a : {0.0, 0.25, 0.5, 0.8, 1.0, 1.5})
            for (double b : {-1.0, 0.0, 1.0, 2.0}) {
                if (a == 0.0 && b < 0.0) continue;
                g.push_back(SymbolicSequence::power_log(a, b));
            }
        for (double gamma : {-1.0, -0.5, 0.0, 0.25, 0.5, 0.8, 1.25})
            for (double delta : {-0.5, 0.0, 1.0, 2.0}) {
                if (gamma == 0.0 && delta < 0.0) continue;
                g.push_back(SymbolicSequence::spike(gamma, delta));
            }
        for (std::int64_t n : {1, 2, 4, 9, 100}) g.push_back(SymbolicSequence::unit_basis(n));
        g.push_back(SymbolicSequence::finite({0, 3, 1, 2}));
        g.push_back(SymbolicSequence::finite({1, 1, 1}));
        g.push_back(SymbolicSequence::finite({2, -3, 5, 0, 1}));
        g.push_back(SymbolicSequence::finite({0, 0}));
        return g;
    }();
    return grid;
}

std::vector<SymbolicSequence> sample_families(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SymbolicSequence> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        switch (rng() % 4) {
            case 0: {
                const double a = 2.0 * unit(rng);
                double b = -1.5 + 4.0 * unit(rng);
                if (a == 0.0) b = std::abs(b);
                out.push_back(SymbolicSequence::power_log(a, b));
                break;
            }
            case 1: {
                double gamma = -1.5 + 2.7 * unit(rng);
                if (unit(rng) < 0.25) gamma = 0.0;
                double delta = -1.0 + 3.5 * unit(rng);
                if (gamma == 0.0) delta = std::abs(delta);
                out.push_back(SymbolicSequence::spike(gamma, delta));
                break;
            }
            case 2:
                out.push_back(SymbolicSequence::unit_basis(1 + static_cast<std::int64_t>(rng() % 512)));
                break;
            default: {
                const std::size_t len = 1 + rng() % 12;
                std::vector<double> vals(len);
                bool nonzero = false;
                for (double& v : vals) {
                    v = -3.0 + 6.0 * unit(rng);
                    nonzero = nonzero || v != 0.0;
                }
                if (!nonzero) continue;
                out.push_back(SymbolicSequence::finite(std::move(vals)));
                break;
            }
        }
    }
    return out;
}

const std::vector<double>& exact_exponent_grid() {
    static const std::vector<double> grid = {1.2, 1.5, 2.0, 2.5, 3.0, 4.0};
    return grid;
}

std::vector<double> plus_schedule(double p) {
    std::vector<double> s;
    for (int k = 1; k <= 6; ++k) s.push_back(p + 1.0 / k);
    return s;
}

std::vector<double> minus_schedule(double p) {
    std::vector<double> s;
    for (int k = 1; k <= 6; ++k) s.push_back(p - (p - 1.0) / (k + 1));
    return s;
}

namespace {

// ---------------------------------------------------------------- V1: hardy
CheckResult hardy_check(const CheckConfig& config, double constant_scale) {
    CheckResult r;
    r.id = "V1";
    r.reference =
        "Hardy's inequality: the truncated p-norm of C(|x|) is at most p' times the p-norm of x";
    const std::vector<double> ps = {1.5, 2.0, 4.0};
    std::vector<SymbolicSequence> pool = example_grid();
    for (auto& s : sample_families(config.seed ^ 0x9e3779b97f4a7c15ULL, config.random_families()))
        pool.push_back(std::move(s));
    const std::int64_t N = config.hardy_N();

    double max_ratio = 0.0;
    json offender;
    int families = 0;
    bool fail = false;
    for (const auto& seq : pool) {
        if (seq.is_zero()) continue;
        ++families;
        CompensatedSum prefix;
        std::vector<CompensatedSum> xs(ps.size()), cs(ps.size());
        for (std::int64_t n = 1; n <= N; ++n) {
            const double x = std::abs(seq.evaluate(n));
            prefix.add(x);
            const double y = prefix.value() / static_cast<double>(n);
            for (std::size_t i = 0; i < ps.size(); ++i) {
                xs[i].add(std::pow(x, ps[i]));
                cs[i].add(std::pow(y, ps[i]));
            }
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const double nx = std::pow(xs[i].value(), 1.0 / ps[i]);
            const double nc = std::pow(cs[i].value(), 1.0 / ps[i]);
            if (nx == 0.0) continue;
            const double bound = constant_scale * conjugate(ps[i]).p_prime;
            max_ratio = std::max(max_ratio, nc / nx);
            if (nc > bound * nx + 1e-9) {
                fail = true;
                if (offender.is_null())
                    offender = {{"p", ps[i]}, {"sequence", seq.to_json()}, {"ratio", nc / nx}};
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"families", families}, {"N", N}, {"max_ratio", max_ratio}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// ------------------------------------------------- V2: coordinate inequalities
CheckResult coordinate_bounds_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V2";
    r.reference = "coordinate bounds: |x_n| <= n ||x||_ces(p) and |x_n| <= ||x||_d(p)";
    const std::vector<double> ps = {1.5, 2.0, 3.0};
    int checked = 0;
    bool fail = false;
    json offender;
    double worst_margin = kInf;
    for (const auto& seq : example_grid()) {
        for (double p : ps) {
            const NormEnclosure ces = ces_norm(seq, p, config.norm_N());
            const NormEnclosure dd = d_norm(seq, p, config.norm_N());
            for (std::int64_t n = 1; n <= 1000; ++n) {
                const double x = std::abs(seq.evaluate(n));
                if (ces.finite()) {
                    ++checked;
                    worst_margin = std::min(worst_margin, static_cast<double>(n) * ces.hi - x);
                    if (x > static_cast<double>(n) * ces.hi + 1e-9) {
                        fail = true;
                        if (offender.is_null())
                            offender = {{"scale", "ces"}, {"p", p}, {"n", n},
                                        {"sequence", seq.to_json()}};
                    }
                }
                if (dd.finite()) {
                    ++checked;
                    worst_margin = std::min(worst_margin, dd.hi - x);
                    if (x > dd.hi + 1e-9) {
                        fail = true;
                        if (offender.is_null())
                            offender = {{"scale", "d"}, {"p", p}, {"n", n},
                                        {"sequence", seq.to_json()}};
                    }
                }
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"inequalities_checked", checked}, {"worst_margin", worst_margin}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// ------------------------------------------------ V3: exact basis d-norms
CheckResult dnorm_basis_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V3";
    r.reference = "the d(p) norm of the n-th basis vector equals n^(1/p) exactly";
    double max_rel = 0.0;
    bool fail = false;
    json offender;
    for (double p : {1.25, 2.0, 3.0}) {
        for (std::int64_t n = 1; n <= config.basis_max(); ++n) {
            const NormEnclosure e = d_norm(SymbolicSequence::unit_basis(n), p, 16);
            const double expected = std::pow(static_cast<double>(n), 1.0 / p);
            const double rel = std::abs(e.lo - expected) / expected;
            max_rel = std::max(max_rel, rel);
            if (rel > 1e-12 || e.lo != e.hi) {
                fail = true;
                if (offender.is_null()) offender = {{"p", p}, {"n", n}, {"rel_error", rel}};
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"max_rel_error", max_rel}, {"n_max", config.basis_max()}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// ----------------------------------------- V4: two-sided basis ces asymptotics
CheckResult cesnorm_basis_band(const CheckConfig& config, const std::vector<double>& qs,
                               std::int64_t n_max, CheckResult r) {
    if (config.norm_N() < 8 * n_max) {
        r.status = CheckStatus::Skip;
        r.evidence = {{"reason", "budget too small for a stable band"},
                      {"norm_N", config.norm_N()},
                      {"n_max", n_max}};
        return r;
    }
    bool fail = false;
    json bands = json::array();
    for (double q : qs) {
        std::vector<std::int64_t> ns(static_cast<std::size_t>(n_max));
        for (std::int64_t n = 1; n <= n_max; ++n) ns[static_cast<std::size_t>(n - 1)] = n;
        const auto norms = ces_basis_norms(q, ns, 64 * n_max);
        const double qp = conjugate(q).p_prime;
        double lo_band = kInf, hi_band = 0.0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double mid = 0.5 * (norms[i].lo + norms[i].hi);
            const double ratio = mid * std::pow(static_cast<double>(ns[i]), 1.0 / qp);
            lo_band = std::min(lo_band, ratio);
            hi_band = std::max(hi_band, ratio);
        }
        bands.push_back({{"q", q}, {"min", lo_band}, {"max", hi_band},
                         {"spread", hi_band / lo_band}});
        if (!(hi_band / lo_band <= 10.0)) fail = true;
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"bands", bands}, {"n_max", n_max}};
    return r;
}

CheckResult cesnorm_basis_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V4";
    r.reference =
        "||e_n||_ces(q) lies between two positive multiples of n^(-1/q') (bounded band)";
    return cesnorm_basis_band(config, {1.5, 2.0, 4.0}, config.basis_max(), std::move(r));
}

// --------------------------------- V5/V6: averaging (Bennett) equivalences
CheckResult bennett_check(const CheckConfig& config, bool graded) {
    CheckResult r;
    r.id = graded ? "V6" : "V5";
    r.reference = graded
                      ? "C^2(|x|) and C(|x|) belong to the graded p+ / p- spaces together"
                      : "C^2(|x|) and C(|x|) belong to ell_p, ces(p), d(p) together";
    int compared = 0, skipped = 0;
    bool fail = false;
    json offender;
    for (const auto& seq : example_grid()) {
        const AsymptoticClass k1 = cesaro_class(seq);
        const AsymptoticClass k2 = cesaro_of_class(k1);
        if (!k1.representable || !k2.representable) {
            ++skipped;
            continue;
        }
        for (const auto& pt : grade_points()) {
            if (graded == (pt.grade == GradeKind::Exact)) continue;
            for (Scale scale : {Scale::Ell, Scale::Ces, Scale::D}) {
                MembershipProfile m1, m2;
                try {
                    m1 = profile_from_class(k1, scale);
                    m2 = profile_from_class(k2, scale);
                } catch (const std::domain_error&) {
                    ++skipped;
                    continue;
                }
                if (near_boundary(m1, pt.p, config.crit_margin) ||
                    near_boundary(m2, pt.p, config.crit_margin)) {
                    ++skipped;
                    continue;
                }
                ++compared;
                if (profile_in(m1, pt.grade, pt.p) != profile_in(m2, pt.grade, pt.p)) {
                    fail = true;
                    if (offender.is_null())
                        offender = {{"sequence", seq.to_json()},
                                    {"scale", scale_name(scale)},
                                    {"space", format_space({scale, pt.grade, pt.p})}};
                }
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"compared", compared}, {"skipped", skipped}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// ------------------------------------------------- V7: solid-core identity
CheckResult solid_core_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V7";
    r.reference =
        "solid cores: C(|x|) in the ell scale iff C(|x|) in the d scale iff x in the ces scale, "
        "at every grade";
    int compared = 0, skipped = 0;
    bool fail = false;
    json offender;
    for (const auto& seq : example_grid()) {
        const AsymptoticClass k1 = cesaro_class(seq);
        if (!k1.representable) {
            ++skipped;
            continue;
        }
        const MembershipProfile ces_x = ces_profile(seq);
        const MembershipProfile ell_c = profile_from_class(k1, Scale::Ell);
        const MembershipProfile d_c = profile_from_class(k1, Scale::D);
        for (const auto& pt : grade_points()) {
            if (near_boundary(ces_x, pt.p, config.crit_margin) ||
                near_boundary(ell_c, pt.p, config.crit_margin) ||
                near_boundary(d_c, pt.p, config.crit_margin)) {
                ++skipped;
                continue;
            }
            ++compared;
            const bool in_ces = profile_in(ces_x, pt.grade, pt.p);
            if (profile_in(ell_c, pt.grade, pt.p) != in_ces ||
                profile_in(d_c, pt.grade, pt.p) != in_ces) {
                fail = true;
                if (offender.is_null())
                    offender = {{"sequence", seq.to_json()},
                                {"space_p", pt.p},
                                {"grade", static_cast<int>(pt.grade)}};
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"compared", compared}, {"skipped", skipped}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// --------------------------------------------- V8: inclusion lattice + witnesses
CheckResult inclusion_lattice_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V8";
    r.reference =
        "monotone inclusion lattice: d into ell into ces, smaller exponents into larger, "
        "exact into minus/plus grades; with explicit proper-containment witnesses";
    int implications = 0, skipped = 0;
    bool fail = false;
    json offender;

    auto in_at = [&](const MembershipProfile& m, GradeKind g, double p) {
        return profile_in(m, g, p);
    };

    for (const auto& seq : example_grid()) {
        const MembershipProfile m_ell = ell_profile(seq);
        const MembershipProfile m_ces = ces_profile(seq);
        const MembershipProfile m_d = d_profile(seq);
        const auto& ps = exact_exponent_grid();
        auto boundary = [&](const MembershipProfile& m, double p) {
            return near_boundary(m, p, config.crit_margin);
        };
        auto imply = [&](bool lhs, bool rhs, const char* what, double p, double q) {
            ++implications;
            if (lhs && !rhs) {
                fail = true;
                if (offender.is_null())
                    offender = {{"sequence", seq.to_json()}, {"implication", what},
                                {"p", p},  {"q", q}};
            }
        };
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i; j < ps.size(); ++j) {
                const double p = ps[i], q = ps[j];
                for (const auto* m : {&m_ell, &m_ces, &m_d}) {
                    if (boundary(*m, p) || boundary(*m, q)) {
                        ++skipped;
                        continue;
                    }
                    // scale-internal monotonicity at every grade
                    imply(in_at(*m, GradeKind::Exact, p), in_at(*m, GradeKind::Exact, q),
                          "exact(p) into exact(q)", p, q);
                    imply(in_at(*m, GradeKind::Plus, p), in_at(*m, GradeKind::Plus, q),
                          "plus(p) into plus(q)", p, q);
                    imply(in_at(*m, GradeKind::Minus, p), in_at(*m, GradeKind::Minus, q),
                          "minus(p) into minus(q)", p, q);
                    // exact grade embeds into the enveloping graded spaces
                    imply(in_at(*m, GradeKind::Exact, p), in_at(*m, GradeKind::Plus, p),
                          "exact(p) into plus(p)", p, p);
                    if (p < q)
                        imply(in_at(*m, GradeKind::Exact, p), in_at(*m, GradeKind::Minus, q),
                              "exact(p) into minus(q)", p, q);
                    imply(in_at(*m, GradeKind::Minus, p), in_at(*m, GradeKind::Plus, p),
                          "minus(p) into plus(p)", p, p);
                }
                // cross-scale: d into ell into ces at matching grades
                if (boundary(m_d, p) || boundary(m_ell, q) || boundary(m_ces, q)) {
                    ++skipped;
                    continue;
                }
                imply(in_at(m_d, GradeKind::Exact, p), in_at(m_ell, GradeKind::Exact, q),
                      "d(p) into ell(q)", p, q);
                imply(in_at(m_ell, GradeKind::Exact, p), in_at(m_ces, GradeKind::Exact, q),
                      "ell(p) into ces(q)", p, q);
                imply(in_at(m_d, GradeKind::Exact, p), in_at(m_ces, GradeKind::Exact, q),
                      "d(p) into ces(q)", p, q);
                imply(in_at(m_d, GradeKind::Plus, p), in_at(m_ell, GradeKind::Plus, q),
                      "d(p+) into ell(q+)", p, q);
                imply(in_at(m_ell, GradeKind::Plus, p), in_at(m_ces, GradeKind::Plus, q),
                      "ell(p+) into ces(q+)", p, q);
                imply(in_at(m_d, GradeKind::Minus, p), in_at(m_ell, GradeKind::Minus, q),
                      "d(p-) into ell(q-)", p, q);
                imply(in_at(m_ell, GradeKind::Minus, p), in_at(m_ces, GradeKind::Minus, q),
                      "ell(p-) into ces(q-)", p, q);
            }
        }
    }

    // Properness witnesses for every catalog row.
    int witnesses_built = 0;
    const std::int64_t evidence_N = config.budget == "small" ? 20000 : 100000;
    for (const auto& claim : list_claims()) {
        try {
            build_witness(claim.id, default_witness_params(claim.id).front(), evidence_N);
            ++witnesses_built;
        } catch (const std::exception& e) {
            fail = true;
            if (offender.is_null()) offender = {{"claim", claim.id}, {"error", e.what()}};
        }
    }

    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"implications", implications},
                  {"skipped", skipped},
                  {"witnesses_built", witnesses_built}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// -------------------------------------------------- V9: basis (un)boundedness
CheckResult basis_behavior_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V9";
    r.reference =
        "basis vectors are unbounded in every d grade norm while they vanish in every ces "
        "grade norm";
    const double p = 2.0;
    bool fail = false;
    json offender;
    json d_part = json::array();

    for (double p1 : {plus_schedule(p).front(), minus_schedule(p).front()}) {
        std::vector<std::int64_t> samples;
        for (std::int64_t n = 1; n <= 64; ++n) samples.push_back(n);
        const std::int64_t n_star =
            static_cast<std::int64_t>(std::ceil(std::pow(10.0, 3.0 * p1)));
        for (double n = 64.0; n < static_cast<double>(n_star); n *= 1.5)
            samples.push_back(static_cast<std::int64_t>(n));
        samples.push_back(n_star);
        std::sort(samples.begin(), samples.end());
        samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

        double prev = 0.0;
        std::int64_t crossing = -1;
        for (std::int64_t n : samples) {
            const double v = d_norm(SymbolicSequence::unit_basis(n), p1, 16).lo;
            if (v <= prev) {
                fail = true;
                if (offender.is_null()) offender = {{"part", "d-growth"}, {"n", n}, {"p1", p1}};
            }
            prev = v;
            if (crossing < 0 && v >= 1000.0 * (1.0 - 1e-9)) crossing = n;
        }
        if (crossing < 0 || crossing > n_star) {
            fail = true;
            if (offender.is_null())
                offender = {{"part", "d-crossing"}, {"p1", p1}, {"crossing", crossing}};
        }
        d_part.push_back({{"p1", p1}, {"crossing_n", crossing}, {"limit", n_star}});
    }

    json ces_part = json::array();
    std::vector<double> qs = plus_schedule(p);
    for (double q : minus_schedule(p)) qs.push_back(q);
    for (double q : qs) {
        // expected scale where the norm drops below 1e-2
        const double n0_est =
            std::pow((q - 1.0) * std::pow(1e-2, q), 1.0 / (1.0 - q));
        const std::int64_t n_max =
            static_cast<std::int64_t>(std::min(1e9, std::max(4.0 * n0_est, 1e4)));
        std::vector<std::int64_t> samples;
        for (double n = 1.0; n <= static_cast<double>(n_max); n *= 1.35)
            samples.push_back(static_cast<std::int64_t>(n));
        samples.push_back(n_max);
        std::sort(samples.begin(), samples.end());
        samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
        const auto norms = ces_basis_norms(q, samples, config.norm_N());
        std::int64_t n0 = -1;
        for (std::size_t i = 0; i + 1 < norms.size(); ++i) {
            if (norms[i + 1].hi >= norms[i].hi + 1e-12 && samples[i] >= 4) {
                fail = true;
                if (offender.is_null())
                    offender = {{"part", "ces-monotone"}, {"q", q}, {"n", samples[i + 1]}};
            }
        }
        for (std::size_t i = 0; i < norms.size(); ++i)
            if (norms[i].hi < 1e-2) {
                n0 = samples[i];
                break;
            }
        if (n0 < 0) {
            fail = true;
            if (offender.is_null()) offender = {{"part", "ces-threshold"}, {"q", q}};
        }
        ces_part.push_back({{"q", q}, {"n0", n0}});
    }

    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"d_growth", d_part}, {"ces_decay", ces_part}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// ------------------------------------------------- V10: power-weight grading
CheckResult koethe_grading_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V10";
    r.reference =
        "power-weight seminorms n^t grade the ces scale: ||e_n||_ces(p_k) is two-sidedly "
        "comparable to n^(-1/p_k'), and both gradings increase along the schedule";
    const double p = 2.0;
    const auto schedule = plus_schedule(p);
    bool fail = false;
    json offender;

    // (a) two-sided band for every schedule exponent
    CheckResult band;
    band.id = "V10";
    band = cesnorm_basis_band(config, schedule, std::min<std::int64_t>(config.basis_max(), 2000),
                              std::move(band));
    if (band.status == CheckStatus::Skip) {
        r.status = CheckStatus::Skip;
        r.evidence = band.evidence;
        return r;
    }
    if (band.status == CheckStatus::Fail) fail = true;

    // (b) exact power-weight seminorm values on basis vectors
    double max_err = 0.0;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const double t = -1.0 / conjugate(schedule[k]).p_prime;
        const double t0 = -1.0 / static_cast<double>(k + 1);  // the fixed grading weights
        for (std::int64_t n : {1, 2, 3, 10, 100, 1000}) {
            const double nd = static_cast<double>(n);
            max_err = std::max(max_err,
                               std::abs(weighted_basis_seminorm(n, t) - std::pow(nd, t)));
            max_err = std::max(max_err,
                               std::abs(weighted_basis_seminorm(n, t0) - std::pow(nd, t0)));
        }
    }
    if (max_err != 0.0) fail = true;

    // (c) both gradings increase along the schedule on basis vectors
    std::vector<std::int64_t> ns = {1, 2, 4, 16, 64, 256, 1000};
    std::vector<std::vector<NormEnclosure>> by_k;
    for (double q : schedule) by_k.push_back(ces_basis_norms(q, ns, config.norm_N()));
    for (std::size_t k = 0; k + 1 < schedule.size(); ++k) {
        const double t_k = -1.0 / conjugate(schedule[k]).p_prime;
        const double t_k1 = -1.0 / conjugate(schedule[k + 1]).p_prime;
        if (!(t_k < t_k1)) fail = true;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double mid_k = 0.5 * (by_k[k][i].lo + by_k[k][i].hi);
            const double mid_k1 = 0.5 * (by_k[k + 1][i].lo + by_k[k + 1][i].hi);
            if (mid_k > mid_k1 * (1.0 + 1e-6)) {
                fail = true;
                if (offender.is_null())
                    offender = {{"part", "norm-ordering"}, {"k", k}, {"n", ns[i]}};
            }
            const double nd = static_cast<double>(ns[i]);
            if (std::pow(nd, t_k) > std::pow(nd, t_k1) * (1.0 + 1e-12)) fail = true;
        }
    }

    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"bands", band.evidence["bands"]}, {"max_seminorm_error", max_err}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

// -------------------------------------------- V11: averaging into the d scale
CheckResult cesaro_maps_into_check(const CheckConfig& config) {
    CheckResult r;
    r.id = "V11";
    r.reference = "x in the ces scale at a grade implies C(|x|) in the d scale at that grade";
    int compared = 0, skipped = 0;
    bool fail = false;
    json offender;
    for (const auto& seq : example_grid()) {
        const AsymptoticClass k1 = cesaro_class(seq);
        if (!k1.representable) {
            ++skipped;
            continue;
        }
        const MembershipProfile ces_x = ces_profile(seq);
        const MembershipProfile d_c = profile_from_class(k1, Scale::D);
        for (const auto& pt : grade_points()) {
            if (near_boundary(ces_x, pt.p, config.crit_margin) ||
                near_boundary(d_c, pt.p, config.crit_margin)) {
                ++skipped;
                continue;
            }
            ++compared;
            if (profile_in(ces_x, pt.grade, pt.p) && !profile_in(d_c, pt.grade, pt.p)) {
                fail = true;
                if (offender.is_null())
                    offender = {{"sequence", seq.to_json()},
                                {"space", format_space({Scale::D, pt.grade, pt.p})}};
            }
        }
    }
    r.status = fail ? CheckStatus::Fail : CheckStatus::Pass;
    r.evidence = {{"compared", compared}, {"skipped", skipped}};
    if (!offender.is_null()) r.evidence["offender"] = offender;
    return r;
}

}  // namespace

CheckResult run_hardy_check(const CheckConfig& config, double constant_scale) {
    const auto start = Clock::now();
    CheckResult r = hardy_check(config, constant_scale);
    r.runtime_ms = ms_since(start);
    return r;
}

CheckResult run_check(const std::string& id, const CheckConfig& config) {
    const auto start = Clock::now();
    CheckResult r;
    if (id == "V1")
        r = hardy_check(config, 1.0);
    else if (id == "V2")
        r = coordinate_bounds_check(config);
    else if (id == "V3")
        r = dnorm_basis_check(config);
    else if (id == "V4")
        r = cesnorm_basis_check(config);
    else if (id == "V5")
        r = bennett_check(config, false);
    else if (id == "V6")
        r = bennett_check(config, true);
    else if (id == "V7")
        r = solid_core_check(config);
    else if (id == "V8")
        r = inclusion_lattice_check(config);
    else if (id == "V9")
        r = basis_behavior_check(config);
    else if (id == "V10")
        r = koethe_grading_check(config);
    else if (id == "V11")
        r = cesaro_maps_into_check(config);
    else
        throw UnknownCheck("unknown check id: " + id);
    r.runtime_ms = ms_since(start);
    return r;
}

std::vector<CheckResult> run_all(const CheckConfig& config) {
    std::vector<std::string> ids;
    for (int i = 1; i <= 11; ++i) ids.push_back("V" + std::to_string(i));

    unsigned threads = config.threads > 0
                           ? static_cast<unsigned>(config.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(ids.size()));

    std::vector<CheckResult> results(ids.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < ids.size(); ++i) results[i] = run_check(ids[i], config);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ids.size()) return;
            results[i] = run_check(ids[i], config);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

std::string render_report(const std::vector<CheckResult>& results, const std::string& format,
                          const CheckConfig& config) {
    if (format == "json") {
        json j;
        j["version"] = "1";
        j["seed"] = config.seed;
        j["config"] = config.to_json();
        j["checks"] = json::array();
        for (const auto& r : results) {
            json c;
            c["id"] = r.id;
            c["paper_ref"] = r.reference;
            c["status"] = check_status_name(r.status);
            c["evidence"] = r.evidence;
            c["runtime_ms"] = r.runtime_ms;
            j["checks"].push_back(c);
        }
        return j.dump(2) + "\n";
    }
    if (format == "markdown") {
        std::ostringstream out;
        out << "# Verification report\n\n";
        out << "seed: " << config.seed << ", budget: " << config.budget << "\n\n";
        out << "| check | status | runtime (ms) | claim |\n";
        out << "|-------|--------|--------------|-------|\n";
        for (const auto& r : results)
            out << "| " << r.id << " | " << check_status_name(r.status) << " | "
                << static_cast<std::int64_t>(r.runtime_ms) << " | " << r.reference << " |\n";
        int pass = 0, failn = 0, skip = 0;
        for (const auto& r : results) {
            if (r.status == CheckStatus::Pass) ++pass;
            if (r.status == CheckStatus::Fail) ++failn;
            if (r.status == CheckStatus::Skip) ++skip;
        }
        out << "\n" << pass << " passed, " << failn << " failed, " << skip << " skipped\n";
        return out.str();
    }
    throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace cesp

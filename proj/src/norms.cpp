#include "cesp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cesp/cesaro.hpp"
#include "cesp/classify.hpp"

namespace cesp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailSlack = 1e-9;  // additive slack per tail bound
// sup over L >= 1 of LL / sqrt(L), used when a prefix integral produces LL.
const double kLogLogOverSqrt = 2.0 / std::sqrt(std::numbers::e);

void check_exponent(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("norm exponent must lie in (1, inf)");
}

std::int64_t floor_log2(std::int64_t n) {
    std::int64_t j = -1;
    while (n > 0) {
        n >>= 1;
        ++j;
    }
    return j;  // largest j with 2^j <= n (for n >= 1)
}

std::int64_t ceil_log2(std::int64_t n) {
    std::int64_t j = 0;
    while ((std::int64_t{1} << j) < n) ++j;
    return j;
}

double clamp_finite(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::max(); }

NormEnclosure make_divergent(double partial_power_sum, double p, std::int64_t N) {
    NormEnclosure e;
    e.lo = std::pow(clamp_finite(partial_power_sum), 1.0 / p);
    e.hi = kInf;
    e.N = N;
    e.method = NormMethod::DivergentLowerBound;
    return e;
}

NormEnclosure make_enclosed(double partial_power_sum, double tail_power_sum, double p,
                            std::int64_t N) {
    NormEnclosure e;
    e.lo = std::pow(partial_power_sum, 1.0 / p);
    const double slack = tail_power_sum > 0.0 ? kTailSlack : 0.0;
    e.hi = std::pow(partial_power_sum + tail_power_sum + slack, 1.0 / p);
    e.N = N;
    e.method = tail_power_sum > 0.0 ? NormMethod::IntegralTail : NormMethod::ExactFinite;
    return e;
}

}  // namespace

ConjugateExponent conjugate(double p) {
    check_exponent(p);
    return ConjugateExponent{p, p / (p - 1.0)};
}

std::string norm_method_name(NormMethod m) {
    switch (m) {
        case NormMethod::ExactFinite:
            return "EXACT_FINITE";
        case NormMethod::IntegralTail:
            return "INTEGRAL_TAIL";
        case NormMethod::DivergentLowerBound:
            return "DIVERGENT_LOWER_BOUND";
    }
    return "";
}

json enclosure_to_json(const NormEnclosure& e) {
    json j;
    j["lo"] = e.lo;
    if (std::isinf(e.hi))
        j["hi"] = "inf";
    else
        j["hi"] = e.hi;
    j["N"] = e.N;
    j["method"] = norm_method_name(e.method);
    return j;
}

namespace detail {

double powerlog_tail_upper(double A, double B, std::int64_t N) {
    const double nd = static_cast<double>(N);
    if (A > 1.0) {
        const double boundary = std::pow(nd, 1.0 - A) * std::pow(log_factor(nd), -B);
        if (B >= 0.0) return boundary / (A - 1.0);
        // Exact reduction: int t^{-A} L^{K} dt = [N^{1-A} L(N)^K + K int t^{-A} L^{K-1}] / (A-1)
        return (boundary + (-B) * powerlog_tail_upper(A, B + 1.0, N)) / (A - 1.0);
    }
    if (A == 1.0 && B > 1.0) return std::pow(log_factor(nd), 1.0 - B) / (B - 1.0);
    return kInf;
}

std::int64_t powerlog_monotone_from(double A, double B) {
    if (A <= 0.0) return 1;  // caller handles non-decaying shapes separately
    if (B >= 0.0) return 1;
    // t^{-A} L^{-B} decreases once L(t) >= -B/A.
    const double n0 = std::ceil(std::exp(-B / A - 1.0));
    std::int64_t n = std::max<std::int64_t>(1, static_cast<std::int64_t>(n0));
    auto logf = [&](std::int64_t m) {
        return -A * std::log(static_cast<double>(m)) -
               B * std::log(log_factor(static_cast<double>(m)));
    };
    while (logf(n + 1) > logf(n)) ++n;
    return n;
}

bool powerlog_series_divergent(double A, double B) { return A < 1.0 || (A == 1.0 && B <= 1.0); }

SpikeTailSum spike_tail_sum(double w, double D, std::int64_t J) {
    SpikeTailSum out;
    if (w > 0.0) {
        out.divergent = true;
        return out;
    }
    auto term = [&](std::int64_t j) {
        return std::exp2(static_cast<double>(j) * w) * std::pow(static_cast<double>(j), -D);
    };
    if (w == 0.0) {
        if (D <= 1.0) {
            out.divergent = true;
            return out;
        }
        CompensatedSum s;
        std::int64_t j = J + 1;
        for (std::int64_t i = 0; i < 64; ++i, ++j) s.add(term(j));
        // remaining sum of j^{-D} <= integral from j-1
        out.hi = s.value() + std::pow(static_cast<double>(j - 1), 1.0 - D) / (D - 1.0);
        return out;
    }
    // w < 0: geometrically decaying terms. Term ratio is 2^w ((j+1)/j)^{-D},
    // which is <= rho_star from j_ok on.
    const double base = std::exp2(w);
    const double rho_star = (base + 1.0) / 2.0;
    std::int64_t j_ok = J + 1;
    if (D < 0.0)
        j_ok = std::max(j_ok, static_cast<std::int64_t>(std::ceil(-D / std::log(rho_star / base))));
    CompensatedSum s;
    std::int64_t j = J + 1;
    while (j < j_ok || (term(j) > 1e-305 && j < J + 4000000)) {
        s.add(term(j));
        ++j;
    }
    out.hi = s.value() + term(j) / (1.0 - rho_star);
    return out;
}

double majorant_value(const std::vector<MajorantPiece>& pieces, double n) {
    double v = 0.0;
    for (const auto& piece : pieces)
        v += piece.coef * std::pow(n, -piece.alpha) * std::pow(log_factor(n), -piece.beta);
    return v;
}

namespace {

// Exponent shapes of the tail majorant pieces for C(|x|), known before any
// constants are frozen; used to pick the truncation bump.
std::vector<MajorantPiece> piece_shapes(const SymbolicSequence& seq) {
    switch (seq.family()) {
        case Family::PowerLog: {
            const double a = seq.a(), b = seq.b();
            if (a > 1.0 || (a == 1.0 && b > 1.0)) return {{0, 1, 0}};
            if (a == 1.0 && b == 1.0) return {{0, 1, 0}, {0, 1, -0.5}};
            if (a == 1.0) return {{0, 1, 0}, {0, 1, b - 1.0}};
            return {{0, 1, 0}, {0, a, b}};
        }
        case Family::LacunarySpike: {
            const double g = seq.gamma(), d = seq.delta();
            if (g < 0.0 || (g == 0.0 && d > 1.0)) return {{0, 1, 0}};
            if (g == 0.0 && d == 1.0) return {{0, 1, 0}, {0, 1, -0.5}};
            if (g == 0.0) return {{0, 1, 0}, {0, 1, d - 1.0}};
            if (g < 1.0) {
                if (d < 0.0) return {{0, 1.0 - g, d}};
                return {{0, 1.0 - g / 2.0, -1.0}, {0, 1.0 - g, d}};
            }
            return {};  // divergent at every exponent; no majorant needed
        }
        case Family::UnitBasis:
        case Family::FiniteSupport:
            return {{0, 1, 0}};
    }
    return {};
}

}  // namespace

CesMajorant ces_majorant(const SymbolicSequence& seq, double p, std::int64_t N) {
    check_exponent(p);
    if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
    CesMajorant M;
    M.divergent = !class_series_converges(cesaro_class(seq), p);

    std::int64_t n_eff = std::max<std::int64_t>(N, 64);
    if (auto end = seq.support_end()) n_eff = std::max(n_eff, *end + 1);
    bool sharp = true;
    if (!M.divergent) {
        if (auto n0 = seq.tail_monotone_index()) n_eff = std::max(n_eff, *n0);
        if (seq.family() == Family::LacunarySpike) n_eff = std::max<std::int64_t>(n_eff, 16);
        for (const auto& shape : piece_shapes(seq))
            n_eff = std::max(n_eff, powerlog_monotone_from(shape.alpha * p, shape.beta * p));
        // Sharp prefix-integral constant for power-log with a < 1, b > 0 needs
        // L(N) comfortably above b/(1-a); bump when affordable.
        if (seq.family() == Family::PowerLog && seq.a() > 0.0 && seq.a() < 1.0 && seq.b() > 0.0) {
            const double needed = std::exp(2.0 * seq.b() / (1.0 - seq.a()) - 1.0);
            if (needed <= 4e6)
                n_eff = std::max(n_eff, static_cast<std::int64_t>(std::ceil(needed)));
            else
                sharp = false;
        }
    }
    M.N = n_eff;

    CompensatedSum prefix;
    CompensatedSum power_sum;
    for (std::int64_t n = 1; n <= n_eff; ++n) {
        prefix.add(std::abs(seq.evaluate(n)));
        const double y = prefix.value() / static_cast<double>(n);
        power_sum.add(std::pow(y, p));
    }
    M.prefix_at_N = prefix.value();
    M.partial_power_sum = power_sum.value();
    if (M.divergent) return M;

    const double P = M.prefix_at_N;
    const double LN = log_factor(static_cast<double>(n_eff));
    switch (seq.family()) {
        case Family::PowerLog: {
            const double a = seq.a(), b = seq.b();
            if (a > 1.0 || (a == 1.0 && b > 1.0)) {
                M.pieces = {{P + powerlog_tail_upper(a, b, n_eff), 1, 0}};
            } else if (a == 1.0 && b == 1.0) {
                // prefix grows like LL(n), bounded by kLogLogOverSqrt * sqrt(L)
                M.pieces = {{P, 1, 0}, {kLogLogOverSqrt, 1, -0.5}};
            } else if (a == 1.0) {
                M.pieces = {{P, 1, 0}, {1.0 / (1.0 - b), 1, b - 1.0}};
            } else {
                // a in (0, 1): prefix_n <= P + integral, integral <= shape/c0
                if (sharp) {
                    const double c0 = (1.0 - a) - std::max(b, 0.0) / LN;
                    M.pieces = {{P, 1, 0}, {1.0 / c0, a, b}};
                } else {
                    M.pieces = {{P, 1, 0}, {std::pow(LN, -b) / (1.0 - a), a, 0}};
                }
            }
            return M;
        }
        case Family::LacunarySpike: {
            const double g = seq.gamma(), d = seq.delta();
            const double ln2 = std::numbers::ln2;
            if (g < 0.0 || (g == 0.0 && d > 1.0)) {
                M.pieces = {{P + spike_tail_sum(g, d, floor_log2(n_eff)).hi, 1, 0}};
            } else if (g == 0.0 && d == 1.0) {
                // prefix <= 1 + ln(J) <= LL(n) + ln(1/ln2)
                M.pieces = {{1.0 - std::log(ln2), 1, 0}, {kLogLogOverSqrt, 1, -0.5}};
            } else if (g == 0.0) {
                M.pieces = {{1.0, 1, 0},
                            {std::pow(1.0 / ln2, 1.0 - d) / (1.0 - d), 1, d - 1.0}};
            } else {  // 0 < g < 1 (g >= 1 is divergent at every p)
                if (d < 0.0) {
                    // heights grow at ratio >= 2^g from the first block
                    const double rho = std::exp2(g);
                    M.pieces = {{rho / (rho - 1.0) * std::pow(ln2, d), 1.0 - g, d}};
                } else {
                    // split blocks at J/2: small blocks bounded by 2^{J g/2},
                    // late blocks by (J/2)^{-d} times a geometric sum
                    const double c_g = std::exp2(g) / (std::exp2(g) - 1.0);
                    M.pieces = {{1.0 / (2.0 * ln2), 1.0 - g / 2.0, -1.0},
                                {std::pow(4.0 * ln2, d) * c_g, 1.0 - g, d}};
                }
            }
            return M;
        }
        case Family::UnitBasis:
        case Family::FiniteSupport:
            M.pieces = {{P, 1, 0}};
            return M;
    }
    return M;
}

}  // namespace detail

NormEnclosure lp_norm(const SymbolicSequence& seq, double p, std::int64_t N) {
    check_exponent(p);
    if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
    using namespace detail;
    switch (seq.family()) {
        case Family::UnitBasis: {
            NormEnclosure e;
            e.lo = e.hi = 1.0;
            e.N = std::max(N, seq.basis_index());
            e.method = NormMethod::ExactFinite;
            return e;
        }
        case Family::FiniteSupport: {
            CompensatedSum s;
            for (double v : seq.values()) s.add(std::pow(std::abs(v), p));
            NormEnclosure e;
            e.lo = e.hi = std::pow(s.value(), 1.0 / p);
            e.N = std::max(N, *seq.support_end());
            e.method = NormMethod::ExactFinite;
            return e;
        }
        case Family::PowerLog: {
            const double A = seq.a() * p, B = seq.b() * p;
            const bool divergent = seq.a() == 0.0 || powerlog_series_divergent(A, B);
            std::int64_t n_eff = N;
            if (!divergent) n_eff = std::max(n_eff, powerlog_monotone_from(A, B));
            CompensatedSum s;
            for (std::int64_t n = 1; n <= n_eff; ++n) {
                const double nd = static_cast<double>(n);
                s.add(std::pow(nd, -A) * std::pow(log_factor(nd), -B));
            }
            if (divergent) return make_divergent(s.value(), p, n_eff);
            return make_enclosed(s.value(), powerlog_tail_upper(A, B, n_eff), p, n_eff);
        }
        case Family::LacunarySpike: {
            const double w = seq.gamma() * p, D = seq.delta() * p;
            const std::int64_t J = floor_log2(N);
            CompensatedSum s;
            for (std::int64_t j = 1; j <= J; ++j) {
                const double t =
                    std::exp2(static_cast<double>(j) * w) * std::pow(static_cast<double>(j), -D);
                if (!std::isfinite(t)) {
                    s = CompensatedSum();
                    s.add(std::numeric_limits<double>::max());
                    break;
                }
                s.add(t);
            }
            const SpikeTailSum tail = spike_tail_sum(w, D, std::max<std::int64_t>(J, 0));
            if (tail.divergent) return make_divergent(s.value(), p, N);
            return make_enclosed(s.value(), tail.hi, p, N);
        }
    }
    throw std::logic_error("unreachable");
}

NormEnclosure ces_norm(const SymbolicSequence& seq, double p, std::int64_t N) {
    using namespace detail;
    const CesMajorant M = ces_majorant(seq, p, N);
    if (M.divergent) return make_divergent(M.partial_power_sum, p, M.N);
    double mink = 0.0;
    for (const auto& piece : M.pieces) {
        if (piece.coef == 0.0) continue;
        mink += piece.coef *
                std::pow(powerlog_tail_upper(piece.alpha * p, piece.beta * p, M.N), 1.0 / p);
    }
    const double tail = mink > 0.0 ? std::pow(mink, p) : 0.0;
    return make_enclosed(M.partial_power_sum, tail, p, M.N);
}

NormEnclosure d_norm(const SymbolicSequence& seq, double p, std::int64_t N) {
    check_exponent(p);
    if (N < 1) throw std::invalid_argument("truncation level must be >= 1");
    using namespace detail;
    switch (seq.family()) {
        case Family::UnitBasis: {
            NormEnclosure e;
            e.lo = e.hi = std::pow(static_cast<double>(seq.basis_index()), 1.0 / p);
            e.N = std::max(N, seq.basis_index());
            e.method = NormMethod::ExactFinite;
            return e;
        }
        case Family::FiniteSupport: {
            const EnvelopeDescription env = envelope_symbolic(seq);
            const std::int64_t end = *seq.support_end();
            CompensatedSum s;
            for (std::int64_t n = 1; n <= end; ++n) s.add(std::pow(env.value(n), p));
            NormEnclosure e;
            e.lo = e.hi = std::pow(s.value(), 1.0 / p);
            e.N = std::max(N, end);
            e.method = NormMethod::ExactFinite;
            return e;
        }
        case Family::PowerLog: {
            const EnvelopeDescription env = envelope_symbolic(seq);
            const double A = seq.a() * p, B = seq.b() * p;
            const bool divergent = seq.a() == 0.0 || powerlog_series_divergent(A, B);
            std::int64_t n_eff = std::max(N, env.same_from());
            if (!divergent) n_eff = std::max(n_eff, powerlog_monotone_from(A, B));
            CompensatedSum s;
            for (std::int64_t n = 1; n < env.same_from(); ++n) s.add(std::pow(env.value(n), p));
            for (std::int64_t n = env.same_from(); n <= n_eff; ++n) {
                const double nd = static_cast<double>(n);
                s.add(std::pow(nd, -A) * std::pow(log_factor(nd), -B));
            }
            if (divergent) return make_divergent(s.value(), p, n_eff);
            return make_enclosed(s.value(), powerlog_tail_upper(A, B, n_eff), p, n_eff);
        }
        case Family::LacunarySpike: {
            if (seq.gamma() > 0.0) {
                // unbounded sequence: the envelope is infinite everywhere
                double seen = 0.0;
                for (std::int64_t j = 1; j <= std::max<std::int64_t>(floor_log2(N), 1); ++j)
                    seen = std::max(seen, spike_height(seq.gamma(), seq.delta(), j));
                NormEnclosure e;
                e.lo = clamp_finite(seen);
                e.hi = kInf;
                e.N = N;
                e.method = NormMethod::DivergentLowerBound;
                return e;
            }
            const EnvelopeDescription env = envelope_symbolic(seq);
            const std::int64_t Jmax =
                std::max({ceil_log2(N), env.head_blocks() + 2, std::int64_t{8}});
            // block j covers 2^{j-1} indices; index 1 contributes separately
            CompensatedSum s;
            s.add(std::pow(env.value(1), p));
            for (std::int64_t j = 1; j <= Jmax; ++j)
                s.add(std::exp2(static_cast<double>(j - 1)) * std::pow(env.block_value(j), p));
            const double w = 1.0 + seq.gamma() * p, D = seq.delta() * p;
            const SpikeTailSum tail = spike_tail_sum(w, D, Jmax);
            const std::int64_t covered = std::int64_t{1} << Jmax;
            if (tail.divergent) return make_divergent(s.value(), p, covered);
            return make_enclosed(s.value(), tail.hi / 2.0, p, covered);
        }
    }
    throw std::logic_error("unreachable");
}

NormEnclosure d_norm_of_cesaro(const SymbolicSequence& seq, double p, std::int64_t N) {
    using namespace detail;
    const CesMajorant M = ces_majorant(seq, p, std::min<std::int64_t>(N, 400000));
    TruncatedView absview = truncate(seq, M.N);
    for (double& t : absview.terms) t = std::abs(t);
    const TruncatedView averaged = cesaro(absview);

    const TruncatedView env_lo = envelope(averaged, 0.0);
    CompensatedSum lo_sum;
    for (double v : env_lo.terms) lo_sum.add(std::pow(v, p));
    if (M.divergent) return make_divergent(lo_sum.value(), p, M.N);

    const double beyond = majorant_value(M.pieces, static_cast<double>(M.N + 1));
    const TruncatedView env_hi = envelope(averaged, beyond);
    CompensatedSum hi_sum;
    for (double v : env_hi.terms) hi_sum.add(std::pow(v, p));
    double mink = 0.0;
    for (const auto& piece : M.pieces) {
        if (piece.coef == 0.0) continue;
        mink += piece.coef *
                std::pow(powerlog_tail_upper(piece.alpha * p, piece.beta * p, M.N), 1.0 / p);
    }
    NormEnclosure e;
    e.lo = std::pow(lo_sum.value(), 1.0 / p);
    e.hi = std::pow(hi_sum.value() + std::pow(mink, p) + kTailSlack, 1.0 / p);
    e.N = M.N;
    e.method = NormMethod::IntegralTail;
    return e;
}

std::vector<NormEnclosure> ces_basis_norms(double q, const std::vector<std::int64_t>& ns,
                                           std::int64_t N) {
    check_exponent(q);
    std::vector<NormEnclosure> out(ns.size());
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i - 1] >= ns[i]) throw std::invalid_argument("sample indices must be ascending");
    if (!ns.empty() && ns.front() < 1) throw std::invalid_argument("sample indices must be >= 1");

    // Pure analytic enclosure from the two-sided comparison integrals:
    // sum_{k>=n} k^{-q} lies in [n^{1-q}/(q-1), n^{-q} + n^{1-q}/(q-1)].
    auto analytic = [&](std::int64_t n) {
        const double nd = static_cast<double>(n);
        const double integral = std::pow(nd, 1.0 - q) / (q - 1.0);
        NormEnclosure e;
        e.lo = std::pow(integral, 1.0 / q);
        e.hi = std::pow(std::pow(nd, -q) + integral + kTailSlack, 1.0 / q);
        e.N = n;
        e.method = NormMethod::IntegralTail;
        return e;
    };

    // One explicit backward sweep serves the small indices; everything beyond
    // a sixteenth of the sweep budget is already tight analytically.
    constexpr std::int64_t kAnalyticCutoff = 100000;
    const std::int64_t m = std::min<std::int64_t>(
        std::max<std::int64_t>(32 * std::min(ns.back(), kAnalyticCutoff), 4096),
        std::max<std::int64_t>(N, 4096));
    const std::int64_t cutoff = std::min<std::int64_t>(kAnalyticCutoff, m / 16);

    std::int64_t largest_small = 0;
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (ns[i] < cutoff)
            largest_small = ns[i];
        else
            out[i] = analytic(ns[i]);
    if (largest_small == 0) return out;

    const double md = static_cast<double>(m);
    const double tail_hi = std::pow(md, 1.0 - q) / (q - 1.0);
    const double tail_lo = std::pow(md + 1.0, 1.0 - q) / (q - 1.0);
    CompensatedSum suffix;
    std::int64_t i = static_cast<std::int64_t>(ns.size()) - 1;
    while (i >= 0 && ns[static_cast<std::size_t>(i)] >= cutoff) --i;
    for (std::int64_t k = m; k >= 1 && i >= 0; --k) {
        suffix.add(std::pow(static_cast<double>(k), -q));
        while (i >= 0 && ns[static_cast<std::size_t>(i)] == k) {
            NormEnclosure e;
            e.lo = std::pow(suffix.value() + tail_lo, 1.0 / q);
            e.hi = std::pow(suffix.value() + tail_hi + kTailSlack, 1.0 / q);
            e.N = m;
            e.method = NormMethod::IntegralTail;
            out[static_cast<std::size_t>(i)] = e;
            --i;
        }
    }
    return out;
}

}  // namespace cesp

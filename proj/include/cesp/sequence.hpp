// Symbolic sequence families: closed-form nonnegative sequences (plus signed
// finite-support vectors) with pointwise evaluation, finite truncation and
// tail-monotonicity metadata.
#ifndef CESP_SEQUENCE_HPP
#define CESP_SEQUENCE_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cesp {

using json = nlohmann::json;

// L(n) = 1 + ln n, the logarithmic factor used by the power-log family.
inline double log_factor(double n) { return 1.0 + std::log(n); }

enum class Family { PowerLog, LacunarySpike, UnitBasis, FiniteSupport };

// One of four closed-form families:
//   PowerLog{a,b}:        x_n = n^{-a} * L(n)^{-b}
//   LacunarySpike{g,d}:   x_n = 2^(j*g) * j^{-d} if n = 2^j (j >= 1), else 0
//   UnitBasis{m}:         x_n = [n == m]
//   FiniteSupport{v}:     x_n = v[n-1] for n <= len(v), else 0 (entries may be signed)
class SymbolicSequence {
public:
    static SymbolicSequence power_log(double a, double b);
    static SymbolicSequence spike(double gamma, double delta);
    static SymbolicSequence unit_basis(std::int64_t n);
    static SymbolicSequence finite(std::vector<double> values);

    Family family() const { return family_; }

    // Term value at index n >= 1. Deterministic, double precision.
    double evaluate(std::int64_t n) const;

    // Least index from which |x_n| is nonincreasing, when available in closed
    // form. LacunarySpike has no pointwise-monotone tail and yields nullopt.
    std::optional<std::int64_t> tail_monotone_index() const;

    // sup_{k > N} |x_k|. Unavailable (infinite) for spikes with gamma > 0.
    std::optional<double> tail_sup(std::int64_t N) const;

    // Family parameters. Only the accessors matching family() are meaningful.
    double a() const { return p1_; }
    double b() const { return p2_; }
    double gamma() const { return p1_; }
    double delta() const { return p2_; }
    std::int64_t basis_index() const { return n_; }
    const std::vector<double>& values() const { return values_; }

    // Index of the last nonzero coordinate for finitely supported families
    // (0 for the zero sequence), nullopt otherwise.
    std::optional<std::int64_t> support_end() const;

    bool is_zero() const;

    json to_json() const;
    static SymbolicSequence from_json(const json& j);
    std::string describe() const;

private:
    SymbolicSequence() = default;

    Family family_ = Family::UnitBasis;
    double p1_ = 0.0;  // a or gamma
    double p2_ = 0.0;  // b or delta
    std::int64_t n_ = 1;
    std::vector<double> values_;
};

// Spike height at block j >= 1: 2^(j*gamma) * j^(-delta).
double spike_height(double gamma, double delta, std::int64_t j);

enum class TailKind { Zero, EventuallyMonotoneFrom, Unknown };

// Exact finite view of the first N terms. terms[k] == evaluate(seq, k+1)
// bit-for-bit.
struct TruncatedView {
    std::vector<double> terms;
    TailKind tail_kind = TailKind::Unknown;
    std::int64_t monotone_from = 0;  // meaningful for EventuallyMonotoneFrom

    std::int64_t size() const { return static_cast<std::int64_t>(terms.size()); }
};

TruncatedView truncate(const SymbolicSequence& seq, std::int64_t N);

}  // namespace cesp

#endif

// Averaging and envelope kernels: the Cesaro operator C, its square, and the
// decreasing envelope (suffix supremum), on finite views and symbolically.
#ifndef CESP_CESARO_HPP
#define CESP_CESARO_HPP

#include <stdexcept>

#include "cesp/sequence.hpp"

namespace cesp {

// Compensated (Neumaier) accumulator for long streaming sums.
class CompensatedSum {
public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Prefix means (1/k) * sum_{i<=k} terms[i]. Averaging destroys the zero-tail
// property, so the output tail is Unknown.
TruncatedView cesaro(const TruncatedView& view);

// C composed with itself `times` times; only 1 and 2 are meaningful here.
TruncatedView cesaro_iterate(const TruncatedView& view, int times);

// Suffix maxima: out_n = max(tail_sup, max_{n<=k<=N} |terms[k]|). The caller
// must supply a valid bound tail_sup >= sup_{k>N} |x_k| of the underlying
// infinite sequence; the output is nonincreasing.
TruncatedView envelope(const TruncatedView& view, double tail_sup);

struct UnsupportedEnvelope : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact symbolic envelope. Three shapes cover the supported families:
//   SameFromIndex: equals the source sequence from index `from` on, with an
//                  explicitly tabulated suffix-max prefix before it (PowerLog);
//   FiniteSteps:   tabulated nonincreasing head, zero afterwards;
//   DyadicBlocks:  constant on dyadic blocks, value H(ceil(log2 m)) where
//                  H(j) = max_{i>=j} of the spike heights.
class EnvelopeDescription {
public:
    enum class Kind { SameFromIndex, FiniteSteps, DyadicBlocks };

    Kind kind() const { return kind_; }
    // Exact envelope value at any index m >= 1.
    double value(std::int64_t m) const;
    // Largest block index tabulated before the heights become nonincreasing
    // (DyadicBlocks only).
    std::int64_t head_blocks() const { return static_cast<std::int64_t>(head_.size()); }
    double block_value(std::int64_t j) const;  // H(j), DyadicBlocks only
    std::int64_t same_from() const { return from_; }

private:
    friend EnvelopeDescription envelope_symbolic(const SymbolicSequence& seq);

    Kind kind_ = Kind::FiniteSteps;
    SymbolicSequence source_ = SymbolicSequence::unit_basis(1);
    std::vector<double> prefix_;  // values 1..from-1 (SameFromIndex) or the whole head (FiniteSteps)
    std::vector<double> head_;    // H(1..j*), DyadicBlocks
    std::int64_t from_ = 1;
};

// Throws UnsupportedEnvelope for spike families with eventually increasing
// heights (gamma > 0), whose suffix suprema are infinite.
EnvelopeDescription envelope_symbolic(const SymbolicSequence& seq);

}  // namespace cesp

#endif

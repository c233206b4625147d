// Certified two-sided enclosures for the ell_p, ces(p) and d(p) norms of
// symbolic families, with divergence certificates when a norm is infinite.
// Tail bounds come from integral comparison on [N, inf) and geometric
// majorants of lacunary block sums.
#ifndef CESP_NORMS_HPP
#define CESP_NORMS_HPP

#include <cstdint>
#include <vector>

#include "cesp/sequence.hpp"

namespace cesp {

struct ConjugateExponent {
    double p = 2.0;
    double p_prime = 2.0;
};

// p' = p / (p - 1); rejects p <= 1 and non-finite p.
ConjugateExponent conjugate(double p);

enum class NormMethod { ExactFinite, IntegralTail, DivergentLowerBound };

struct NormEnclosure {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t N = 0;  // truncation level actually used
    NormMethod method = NormMethod::ExactFinite;

    bool finite() const { return method != NormMethod::DivergentLowerBound; }
};

json enclosure_to_json(const NormEnclosure& e);
std::string norm_method_name(NormMethod m);

// ||x||_p. The lower endpoint is the truncated p-sum; the upper endpoint adds
// an integral (power-log) or geometric (spike) tail majorant plus 1e-9 slack.
// An infinite norm is certified by the divergent comparison integral and
// reported as a DivergentLowerBound with hi = +inf.
NormEnclosure lp_norm(const SymbolicSequence& seq, double p, std::int64_t N);

// ||x||_{ces(p)} = ||C(|x|)||_p. Tail majorants for the averaged sequence are
// assembled from the family's asymptotic class, with constants bounded by the
// prefix sum at N.
NormEnclosure ces_norm(const SymbolicSequence& seq, double p, std::int64_t N);

// ||x||_{d(p)} = ||x-hat||_p via the symbolic envelope; exact for finitely
// supported families. Unbounded sequences (spikes with gamma > 0) are outside
// every d(p) and yield a divergence certificate directly.
NormEnclosure d_norm(const SymbolicSequence& seq, double p, std::int64_t N);

// ||C(|x|)||_{d(p)}: enclosure for the envelope of the averaged sequence,
// used to corroborate membership assertions about C(|x|) in the d scale.
NormEnclosure d_norm_of_cesaro(const SymbolicSequence& seq, double p, std::int64_t N);

// Enclosures of ||e_n||_{ces(q)} = (sum_{k>=n} k^{-q})^{1/q} for every n in
// `ns` (ascending, all <= N), sharing one backward suffix sweep.
std::vector<NormEnclosure> ces_basis_norms(double q, const std::vector<std::int64_t>& ns,
                                           std::int64_t N);

namespace detail {

// Upper bound for sum_{n>N} n^{-A} (1+ln n)^{-B}, via the comparison integral;
// +inf when the integral diverges. The caller guarantees the integrand is
// nonincreasing on [N, inf).
double powerlog_tail_upper(double A, double B, std::int64_t N);

// Smallest index from which t^{-A} L(t)^{-B} is nonincreasing.
std::int64_t powerlog_monotone_from(double A, double B);

bool powerlog_series_divergent(double A, double B);

struct SpikeTailSum {
    double hi = 0.0;
    bool divergent = false;
};

// sum_{j>J} 2^{j w} j^{-D}; divergent when w > 0 or (w == 0 and D <= 1).
SpikeTailSum spike_tail_sum(double w, double D, std::int64_t J);

// One decreasing majorant shape coef * n^{-alpha} * L(n)^{-beta}.
struct MajorantPiece {
    double coef = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct CesMajorant {
    std::vector<MajorantPiece> pieces;  // y_n <= sum of pieces for n > N
    std::int64_t N = 0;                 // level the constants were frozen at
    double prefix_at_N = 0.0;           // P_N = sum_{k<=N} |x_k|
    double partial_power_sum = 0.0;     // sum_{n<=N} y_n^p
    bool divergent = false;
};

// Streams C(|x|) to a bumped truncation level and derives the tail majorant
// pieces for the family's asymptotic class.
CesMajorant ces_majorant(const SymbolicSequence& seq, double p, std::int64_t N);

double majorant_value(const std::vector<MajorantPiece>& pieces, double n);

}  // namespace detail

}  // namespace cesp

#endif

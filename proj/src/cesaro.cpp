#include "cesp/cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cesp {

TruncatedView cesaro(const TruncatedView& view) {
    if (view.size() < 1) throw std::invalid_argument("cesaro requires a nonempty view");
    TruncatedView out;
    out.terms.resize(view.terms.size());
    out.tail_kind = TailKind::Unknown;
    CompensatedSum prefix;
    for (std::size_t k = 0; k < view.terms.size(); ++k) {
        prefix.add(view.terms[k]);
        out.terms[k] = prefix.value() / static_cast<double>(k + 1);
    }
    return out;
}

TruncatedView cesaro_iterate(const TruncatedView& view, int times) {
    if (times != 1 && times != 2)
        throw std::invalid_argument("cesaro_iterate supports times in {1, 2}");
    TruncatedView out = cesaro(view);
    if (times == 2) out = cesaro(out);
    return out;
}

TruncatedView envelope(const TruncatedView& view, double tail_sup) {
    if (!(tail_sup >= 0.0)) throw std::invalid_argument("tail_sup must be nonnegative");
    TruncatedView out;
    out.terms.resize(view.terms.size());
    double running = tail_sup;
    for (std::size_t k = view.terms.size(); k-- > 0;) {
        running = std::max(running, std::abs(view.terms[k]));
        out.terms[k] = running;
    }
    out.tail_kind =
        (view.tail_kind == TailKind::Zero && tail_sup == 0.0) ? TailKind::Zero : TailKind::Unknown;
    out.monotone_from = view.tail_kind == TailKind::Zero ? view.monotone_from : 0;
    return out;
}

double EnvelopeDescription::value(std::int64_t m) const {
    if (m < 1) throw std::invalid_argument("envelope index must be >= 1");
    switch (kind_) {
        case Kind::SameFromIndex:
            if (m < from_) return prefix_[static_cast<std::size_t>(m - 1)];
            return source_.evaluate(m);
        case Kind::FiniteSteps: {
            const auto idx = static_cast<std::size_t>(m - 1);
            return idx < prefix_.size() ? prefix_[idx] : 0.0;
        }
        case Kind::DyadicBlocks: {
            std::int64_t j = 1;  // block of m: ceil(log2 m), clamped to >= 1
            if (m > 2) {
                j = 0;
                for (std::int64_t v = m - 1; v > 0; v >>= 1) ++j;
            }
            return block_value(j);
        }
    }
    return 0.0;
}

double EnvelopeDescription::block_value(std::int64_t j) const {
    if (kind_ != Kind::DyadicBlocks) throw std::logic_error("not a dyadic-block envelope");
    if (j <= head_blocks()) return head_[static_cast<std::size_t>(j - 1)];
    return spike_height(source_.gamma(), source_.delta(), j);
}

EnvelopeDescription envelope_symbolic(const SymbolicSequence& seq) {
    EnvelopeDescription env;
    env.source_ = seq;
    switch (seq.family()) {
        case Family::PowerLog: {
            env.kind_ = EnvelopeDescription::Kind::SameFromIndex;
            env.from_ = *seq.tail_monotone_index();
            env.prefix_.resize(static_cast<std::size_t>(env.from_ - 1));
            double running = seq.evaluate(env.from_);
            for (std::int64_t m = env.from_ - 1; m >= 1; --m) {
                running = std::max(running, seq.evaluate(m));
                env.prefix_[static_cast<std::size_t>(m - 1)] = running;
            }
            return env;
        }
        case Family::UnitBasis: {
            env.kind_ = EnvelopeDescription::Kind::FiniteSteps;
            env.prefix_.assign(static_cast<std::size_t>(seq.basis_index()), 1.0);
            return env;
        }
        case Family::FiniteSupport: {
            env.kind_ = EnvelopeDescription::Kind::FiniteSteps;
            env.prefix_.resize(static_cast<std::size_t>(*seq.support_end()));
            double running = 0.0;
            for (std::size_t k = env.prefix_.size(); k-- > 0;) {
                running = std::max(running, std::abs(seq.values()[k]));
                env.prefix_[k] = running;
            }
            return env;
        }
        case Family::LacunarySpike: {
            if (seq.gamma() > 0.0)
                throw UnsupportedEnvelope(
                    "spike heights increase without bound; the envelope is infinite");
            env.kind_ = EnvelopeDescription::Kind::DyadicBlocks;
            // Heights are nonincreasing from block j*; tabulate suffix maxima
            // H(1..j*) over the head.
            std::int64_t j_star = 1;
            if (seq.gamma() < 0.0 && seq.delta() < 0.0)
                j_star = std::max<std::int64_t>(
                    1, static_cast<std::int64_t>(
                           std::ceil(-seq.delta() / (-seq.gamma() * std::numbers::ln2))));
            while (spike_height(seq.gamma(), seq.delta(), j_star + 1) >
                   spike_height(seq.gamma(), seq.delta(), j_star))
                ++j_star;
            env.head_.resize(static_cast<std::size_t>(j_star));
            double running = spike_height(seq.gamma(), seq.delta(), j_star);
            for (std::int64_t j = j_star; j >= 1; --j) {
                running = std::max(running, spike_height(seq.gamma(), seq.delta(), j));
                env.head_[static_cast<std::size_t>(j - 1)] = running;
            }
            return env;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace cesp

#include "cesp/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cesp {

namespace {

bool is_power_of_two(std::int64_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::int64_t log2_exact(std::int64_t n) {
    std::int64_t j = 0;
    while (n > 1) {
        n >>= 1;
        ++j;
    }
    return j;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double spike_height(double gamma, double delta, std::int64_t j) {
    return std::exp2(static_cast<double>(j) * gamma) * std::pow(static_cast<double>(j), -delta);
}

SymbolicSequence SymbolicSequence::power_log(double a, double b) {
    require_finite(a, "power exponent a");
    require_finite(b, "log exponent b");
    if (a < 0.0) throw std::invalid_argument("power-log family requires a >= 0");
    if (a == 0.0 && b < 0.0)
        throw std::invalid_argument("power-log family with a = 0 requires b >= 0");
    SymbolicSequence s;
    s.family_ = Family::PowerLog;
    s.p1_ = a;
    s.p2_ = b;
    return s;
}

SymbolicSequence SymbolicSequence::spike(double gamma, double delta) {
    require_finite(gamma, "height exponent gamma");
    require_finite(delta, "log-height exponent delta");
    if (gamma == 0.0 && delta < 0.0)
        throw std::invalid_argument("lacunary spike with gamma = 0 requires delta >= 0");
    SymbolicSequence s;
    s.family_ = Family::LacunarySpike;
    s.p1_ = gamma;
    s.p2_ = delta;
    return s;
}

SymbolicSequence SymbolicSequence::unit_basis(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("unit basis index must be >= 1");
    SymbolicSequence s;
    s.family_ = Family::UnitBasis;
    s.n_ = n;
    return s;
}

SymbolicSequence SymbolicSequence::finite(std::vector<double> values) {
    for (double v : values) require_finite(v, "finite support entry");
    SymbolicSequence s;
    s.family_ = Family::FiniteSupport;
    s.values_ = std::move(values);
    return s;
}

double SymbolicSequence::evaluate(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("sequence index must be >= 1");
    const double nd = static_cast<double>(n);
    switch (family_) {
        case Family::PowerLog: {
            double v = 1.0;
            if (p1_ != 0.0) v *= std::pow(nd, -p1_);
            if (p2_ != 0.0) v *= std::pow(log_factor(nd), -p2_);
            return v;
        }
        case Family::LacunarySpike: {
            if (!is_power_of_two(n)) return 0.0;
            return spike_height(p1_, p2_, log2_exact(n));
        }
        case Family::UnitBasis:
            return n == n_ ? 1.0 : 0.0;
        case Family::FiniteSupport: {
            const auto idx = static_cast<std::size_t>(n - 1);
            return idx < values_.size() ? values_[idx] : 0.0;
        }
    }
    return 0.0;
}

std::optional<std::int64_t> SymbolicSequence::support_end() const {
    switch (family_) {
        case Family::UnitBasis:
            return n_;
        case Family::FiniteSupport: {
            std::int64_t end = 0;
            for (std::size_t i = 0; i < values_.size(); ++i)
                if (values_[i] != 0.0) end = static_cast<std::int64_t>(i + 1);
            return end;
        }
        default:
            return std::nullopt;
    }
}

bool SymbolicSequence::is_zero() const {
    auto end = support_end();
    return end.has_value() && *end == 0;
}

std::optional<std::int64_t> SymbolicSequence::tail_monotone_index() const {
    switch (family_) {
        case Family::PowerLog: {
            if (p1_ == 0.0 || p2_ >= 0.0) return 1;  // a > 0, b >= 0 decreasing from the start
            // a > 0, b < 0: |x| decreases once a*ln n >= |b|*ln L(n), i.e. from
            // the stationary point of the continuous interpolant at L(n) = |b|/a.
            double n0 = std::ceil(std::exp(-p2_ / p1_ - 1.0));
            std::int64_t idx = std::max<std::int64_t>(1, static_cast<std::int64_t>(n0));
            while (evaluate(idx + 1) > evaluate(idx)) ++idx;
            return idx;
        }
        case Family::LacunarySpike:
            return std::nullopt;
        case Family::UnitBasis:
        case Family::FiniteSupport:
            return *support_end() + 1;
    }
    return std::nullopt;
}

std::optional<double> SymbolicSequence::tail_sup(std::int64_t N) const {
    if (N < 0) throw std::invalid_argument("truncation level must be >= 0");
    switch (family_) {
        case Family::PowerLog: {
            const std::int64_t n0 = *tail_monotone_index();
            double sup = evaluate(std::max(N, n0) + 1);
            for (std::int64_t k = N + 1; k <= n0; ++k) sup = std::max(sup, evaluate(k));
            return sup;
        }
        case Family::LacunarySpike: {
            if (p1_ > 0.0) return std::nullopt;  // heights unbounded
            // sup over spikes beyond N: heights are nonincreasing from some
            // block j*, so only finitely many leading blocks need inspection.
            std::int64_t j_from = 1;
            while ((std::int64_t{1} << j_from) <= N) ++j_from;
            std::int64_t j_star = 1;
            if (p1_ < 0.0 && p2_ < 0.0)
                j_star = std::max<std::int64_t>(
                    1, static_cast<std::int64_t>(std::ceil(-p2_ / (-p1_ * std::numbers::ln2))));
            while (spike_height(p1_, p2_, j_star + 1) > spike_height(p1_, p2_, j_star)) ++j_star;
            double sup = spike_height(p1_, p2_, std::max(j_from, j_star));
            for (std::int64_t j = j_from; j <= j_star; ++j)
                sup = std::max(sup, spike_height(p1_, p2_, j));
            return sup;
        }
        case Family::UnitBasis:
            return n_ > N ? 1.0 : 0.0;
        case Family::FiniteSupport: {
            double sup = 0.0;
            for (std::size_t i = static_cast<std::size_t>(N); i < values_.size(); ++i)
                sup = std::max(sup, std::abs(values_[i]));
            return sup;
        }
    }
    return std::nullopt;
}

json SymbolicSequence::to_json() const {
    switch (family_) {
        case Family::PowerLog:
            return json{{"family", "powerlog"}, {"a", p1_}, {"b", p2_}};
        case Family::LacunarySpike:
            return json{{"family", "spike"}, {"gamma", p1_}, {"delta", p2_}};
        case Family::UnitBasis:
            return json{{"family", "basis"}, {"n", n_}};
        case Family::FiniteSupport:
            return json{{"family", "finite"}, {"values", values_}};
    }
    return json{};
}

SymbolicSequence SymbolicSequence::from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw std::invalid_argument("sequence JSON must be an object with a \"family\" string");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "powerlog") return power_log(j.at("a").get<double>(), j.at("b").get<double>());
    if (fam == "spike") return spike(j.at("gamma").get<double>(), j.at("delta").get<double>());
    if (fam == "basis") return unit_basis(j.at("n").get<std::int64_t>());
    if (fam == "finite") return finite(j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("unknown sequence family: " + fam);
}

std::string SymbolicSequence::describe() const { return to_json().dump(); }

TruncatedView truncate(const SymbolicSequence& seq, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("truncation length must be >= 1");
    TruncatedView view;
    view.terms.resize(static_cast<std::size_t>(N));
    for (std::int64_t k = 1; k <= N; ++k)
        view.terms[static_cast<std::size_t>(k - 1)] = seq.evaluate(k);

    if (auto end = seq.support_end(); end.has_value() && *end <= N) {
        view.tail_kind = TailKind::Zero;
        view.monotone_from = *end + 1;
        return view;
    }
    if (auto n0 = seq.tail_monotone_index(); n0.has_value()) {
        view.tail_kind = TailKind::EventuallyMonotoneFrom;
        view.monotone_from = *n0;
        return view;
    }
    view.tail_kind = TailKind::Unknown;
    return view;
}

}  // namespace cesp

#include <doctest.h>

#include <cmath>
#include <random>

#include "cesp/cesaro.hpp"
#include "support/oracle.hpp"

using namespace cesp;

namespace {

TruncatedView make_view(std::vector<double> terms) {
    TruncatedView v;
    v.terms = std::move(terms);
    v.tail_kind = TailKind::Unknown;
    return v;
}

}  // namespace

TEST_CASE("prefix averages") {
    const auto out = cesaro(make_view({1.0, 0.5, 1.0 / 3.0}));
    CHECK(out.terms[0] == 1.0);
    CHECK(out.terms[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(out.terms[2] == doctest::Approx(11.0 / 18.0).epsilon(1e-15));
    CHECK(out.tail_kind == TailKind::Unknown);

    const auto ones = cesaro(make_view({1, 1, 1, 1}));
    CHECK(ones.terms == std::vector<double>{1, 1, 1, 1});

    const auto e1 = cesaro(truncate(SymbolicSequence::unit_basis(1), 4));
    for (std::int64_t k = 1; k <= 4; ++k)
        CHECK(e1.terms[static_cast<std::size_t>(k - 1)] == 1.0 / static_cast<double>(k));
}

TEST_CASE("iterated averaging") {
    CHECK(cesaro_iterate(make_view({1, 1, 1}), 2).terms == std::vector<double>{1, 1, 1});
    const auto twice = cesaro_iterate(truncate(SymbolicSequence::unit_basis(1), 3), 2);
    CHECK(twice.terms[0] == 1.0);
    CHECK(twice.terms[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(twice.terms[2] == doctest::Approx(11.0 / 18.0).epsilon(1e-15));
    const auto once = cesaro_iterate(make_view({2, 0, 0}), 1);
    CHECK(once.terms[0] == 2.0);
    CHECK(once.terms[1] == 1.0);
    CHECK(once.terms[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(cesaro_iterate(make_view({1}), 0), std::invalid_argument);
    CHECK_THROWS_AS(cesaro_iterate(make_view({1}), 3), std::invalid_argument);
}

TEST_CASE("averaging is positive and dominated by the modulus average") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> signed_terms(1 + rng() % 40);
        for (double& t : signed_terms) t = coef(rng);
        std::vector<double> abs_terms = signed_terms;
        for (double& t : abs_terms) t = std::abs(t);
        const auto c_signed = cesaro(make_view(signed_terms));
        const auto c_abs = cesaro(make_view(abs_terms));
        for (std::size_t k = 0; k < signed_terms.size(); ++k) {
            CHECK(c_abs.terms[k] >= 0.0);
            CHECK(std::abs(c_signed.terms[k]) <= c_abs.terms[k] + 1e-12);
        }
    }
}

TEST_CASE("compensated prefix kernel against a 128-bit accumulator") {
    const std::int64_t N = 10000000;
    const auto seq = SymbolicSequence::power_log(1.0, 0.0);
    CompensatedSum prefix;
    for (std::int64_t n = 1; n <= N; ++n) prefix.add(seq.evaluate(n));
    const double reference = testsupport::quad_inverse_power_sum(1.0, 0.0, N);
    CHECK(std::abs(prefix.value() - reference) / reference < 1e-12);
}

TEST_CASE("envelope sweep") {
    const auto env = envelope(make_view({0, 3, 1, 2, 0, 0}), 0.0);
    CHECK(env.terms == std::vector<double>{3, 3, 2, 2, 0, 0});
    double total = 0.0;
    for (double t : env.terms) total += t;
    CHECK(total == 10.0);  // the absolute sum of the envelope, exactly
    CHECK(envelope(make_view({1, 1, 1}), 1.0).terms == std::vector<double>{1, 1, 1});
    const auto e4 = envelope(truncate(SymbolicSequence::unit_basis(4), 6), 0.0);
    CHECK(e4.terms == std::vector<double>{1, 1, 1, 1, 0, 0});
    CHECK_THROWS_AS(envelope(make_view({1}), -0.5), std::invalid_argument);
}

TEST_CASE("envelope properties: dominating, nonincreasing, idempotent") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> terms(1 + rng() % 50);
        for (double& t : terms) t = coef(rng);
        const double tail = std::abs(coef(rng));
        const auto env = envelope(make_view(terms), tail);
        for (std::size_t k = 0; k < terms.size(); ++k) {
            CHECK(env.terms[k] >= std::abs(terms[k]));
            if (k + 1 < terms.size()) CHECK(env.terms[k] >= env.terms[k + 1]);
        }
        CHECK(envelope(env, tail).terms == env.terms);
    }
}

TEST_CASE("symbolic envelopes match the brute-force sweep") {
    const std::int64_t N = 10000;
    const std::vector<SymbolicSequence> supported = {
        SymbolicSequence::power_log(1.0, 0.0),
        SymbolicSequence::power_log(0.5, -1.0),
        SymbolicSequence::power_log(0.0, 1.0),
        SymbolicSequence::unit_basis(4),
        SymbolicSequence::finite({0, 3, 1, 2}),
        SymbolicSequence::spike(-1.0, 0.0),
        SymbolicSequence::spike(-0.25, -1.5),
        SymbolicSequence::spike(0.0, 1.0),
        SymbolicSequence::spike(0.0, 0.0),
    };
    for (const auto& seq : supported) {
        const auto env = envelope_symbolic(seq);
        const auto numeric = envelope(truncate(seq, N), *seq.tail_sup(N));
        for (std::int64_t n = 1; n <= N; ++n) {
            REQUIRE(env.value(n) ==
                    doctest::Approx(numeric.terms[static_cast<std::size_t>(n - 1)])
                        .epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(envelope_symbolic(SymbolicSequence::spike(0.5, 0.0)), UnsupportedEnvelope);
}

TEST_CASE("symbolic envelope structure for the named examples") {
    const auto basis = envelope_symbolic(SymbolicSequence::unit_basis(4));
    for (std::int64_t n = 1; n <= 4; ++n) CHECK(basis.value(n) == 1.0);
    CHECK(basis.value(5) == 0.0);

    const auto pl = envelope_symbolic(SymbolicSequence::power_log(1.0, 0.0));
    for (std::int64_t n : {1, 2, 10, 1000}) CHECK(pl.value(n) == 1.0 / static_cast<double>(n));

    const auto sp = envelope_symbolic(SymbolicSequence::spike(-1.0, 0.0));
    CHECK(sp.value(1) == 0.5);
    for (std::int64_t m : {2, 3, 4, 5, 9, 100}) {
        const double j = std::ceil(std::log2(static_cast<double>(m)));
        CHECK(sp.value(m) == doctest::Approx(std::exp2(-j)).epsilon(1e-14));
    }
}

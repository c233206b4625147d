#include "cesp/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cesp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_p(const WitnessParams& params) {
    if (!params.p) throw ParamsOutOfDomain("claim requires parameter p");
    return *params.p;
}
double require_q(const WitnessParams& params) {
    if (!params.q) throw ParamsOutOfDomain("claim requires parameter q");
    return *params.q;
}
void require(bool cond, const char* msg) {
    if (!cond) throw ParamsOutOfDomain(msg);
}

double midpoint(double p, double q) { return std::isinf(q) ? p + 1.0 : 0.5 * (p + q); }

struct Builder {
    WitnessResult result;

    void seq(SymbolicSequence s) { result.sequence = std::move(s); }
    void expect(AssertionTarget target, SpaceSpec space, Status status) {
        for (const auto& a : result.assertions)
            if (a.target == target && a.space.scale == space.scale &&
                a.space.grade == space.grade && a.space.p == space.p)
                return;  // dedupe
        WitnessAssertion a;
        a.target = target;
        a.space = space;
        a.expected = status;
        result.assertions.push_back(a);
    }
    void in(Scale s, GradeKind g, double p) { expect(AssertionTarget::Sequence, {s, g, p}, Status::In); }
    void out(Scale s, GradeKind g, double p) { expect(AssertionTarget::Sequence, {s, g, p}, Status::Out); }
    void averaged_in(Scale s, GradeKind g, double p) {
        expect(AssertionTarget::Averaged, {s, g, p}, Status::In);
    }
};

// Exact-grade exponent at which numeric evidence for one assertion is
// computed: the exponent itself for exact grades, a representative exponent
// strictly inside the defining intersection/union otherwise.
double evidence_exponent(const SpaceSpec& space, const MembershipProfile& profile, Status status) {
    const double crit = profile.crit;
    switch (space.grade) {
        case GradeKind::Exact:
            return space.p;
        case GradeKind::Plus:
            if (status == Status::In) return space.p + 0.5;
            return std::isinf(crit) ? space.p + 0.5 : 0.5 * (space.p + std::min(crit, space.p + 1.0));
        case GradeKind::Minus:
            if (status == Status::In)
                return std::isinf(space.p) ? crit + 0.5 : 0.5 * (crit + space.p);
            return std::isinf(space.p) ? 2.5 : std::max(0.5 * (1.0 + space.p), space.p - 0.5);
    }
    return space.p;
}

NormEnclosure evidence_norm(const SymbolicSequence& x, AssertionTarget target, Scale scale,
                            double exponent, std::int64_t N) {
    if (target == AssertionTarget::Sequence) {
        switch (scale) {
            case Scale::Ell:
                return lp_norm(x, exponent, N);
            case Scale::Ces:
                return ces_norm(x, exponent, N);
            case Scale::D:
                return d_norm(x, exponent, N);
        }
    }
    switch (scale) {
        case Scale::Ell:
            return ces_norm(x, exponent, N);  // ||C(|x|)||_p is the ces norm of x
        case Scale::D:
            return d_norm_of_cesaro(x, exponent, N);
        case Scale::Ces:
            break;
    }
    throw std::logic_error("no evidence route for the ces scale of an averaged sequence");
}

}  // namespace

const std::vector<ClaimInfo>& list_claims() {
    static const std::vector<ClaimInfo> catalog = {
        {"ellp-proper-in-ellq", "ell_p is a proper subspace of ell_q", "1 < p < q"},
        {"ces-proper", "ces(p) is a proper subspace of ces(q)", "1 < p < q"},
        {"d-proper", "d(p) is a proper subspace of d(q)", "1 < p < q"},
        {"ell-proper-in-ces", "ell_p is a proper subspace of ces(q)", "1 < p <= q"},
        {"d-proper-in-ell", "d(p) is a proper subspace of ell_q", "1 < p <= q"},
        {"d-proper-in-ces", "d(p) is a proper subspace of ces(q)", "1 < p <= q"},
        {"ellplus-proper-in-cesplus", "ell_{p+} is a proper subspace of ces(q+)", "1 <= p <= q"},
        {"ellminus-proper-in-cesminus", "ell_{p-} is a proper subspace of ces(q-)",
         "1 < p <= q <= inf"},
        {"ellminus-proper", "ell_{p-} is a proper subspace of ell_{q-}", "1 < p < q <= inf"},
        {"cesminus-proper", "ces(p-) is a proper subspace of ces(q-)", "1 < p < q <= inf"},
        {"d-plus-proper", "d(p+) is a proper subspace of d(q+)", "1 <= p < q"},
        {"d-minus-proper", "d(p-) is a proper subspace of d(q-)", "1 < p < q <= inf"},
        {"dplus-proper-chain", "the inclusion d(p+) into ell_{q+} is proper", "1 <= p <= q"},
        {"dminus-proper-chain", "the inclusion d(p-) into ell_{q-} is proper",
         "1 < p <= q <= inf"},
        {"d-into-dminus-proper", "d(p) is a proper subspace of d(q-)", "1 < p < q <= inf"},
        {"bennett-fails-ellplus",
         "C(|x|) in ell_{p+} does not imply x in ell_{p+}: take x in ces(p+) outside ell_{p+}",
         "1 <= p"},
        {"bennett-fails-ellminus",
         "C(|x|) in ell_{p-} does not imply x in ell_{p-}: take x in ces(p-) outside ell_{p-}",
         "1 < p <= inf"},
        {"bennett-fails-dplus",
         "C(|x|) in d(p+) does not imply x in d(p+): take x in ell_{p+} outside d(p+)", "1 <= p"},
        {"bennett-fails-dminus",
         "C(|x|) in d(p-) does not imply x in d(p-): take x in ell_{p-} outside d(p-)",
         "1 < p <= inf"},
    };
    return catalog;
}

WitnessResult build_witness(const std::string& claim, const WitnessParams& params,
                            std::int64_t evidence_N) {
    Builder b;
    b.result.claim = claim;
    b.result.params = params;

    if (claim == "ellp-proper-in-ellq" || claim == "ces-proper" || claim == "d-proper") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p < q && std::isfinite(q), "requires 1 < p < q < inf");
        const double r = midpoint(p, q);
        b.seq(SymbolicSequence::power_log(1.0 / r, 0.0));
        const Scale s = claim == "ellp-proper-in-ellq" ? Scale::Ell
                        : claim == "ces-proper"        ? Scale::Ces
                                                       : Scale::D;
        b.in(s, GradeKind::Exact, q);
        b.out(s, GradeKind::Exact, p);
    } else if (claim == "ell-proper-in-ces") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p <= q && std::isfinite(q), "requires 1 < p <= q < inf");
        b.seq(SymbolicSequence::spike((q - 1.0) / (q + 1.0), 0.0));
        b.in(Scale::Ces, GradeKind::Exact, q);
        for (double s : {p, q, 2.0 * q}) b.out(Scale::Ell, GradeKind::Exact, s);
    } else if (claim == "d-proper-in-ell" || claim == "d-proper-in-ces") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p <= q && std::isfinite(q), "requires 1 < p <= q < inf");
        b.seq(SymbolicSequence::spike(0.0, 2.0 / q));
        b.in(claim == "d-proper-in-ell" ? Scale::Ell : Scale::Ces, GradeKind::Exact, q);
        for (double s : {std::max(1.5, p - 0.5), p, 2.0 * p}) b.out(Scale::D, GradeKind::Exact, s);
    } else if (claim == "ellplus-proper-in-cesplus") {
        const double p = require_p(params), q = require_q(params);
        require(p >= 1.0 && p <= q && std::isfinite(q), "requires 1 <= p <= q < inf");
        if (q >= 1.3)
            b.seq(SymbolicSequence::spike((q - 1.0) / (q + 1.0), 0.0));
        else
            b.seq(SymbolicSequence::spike(0.0, 1.0 / (q + 1.0)));
        b.in(Scale::Ces, GradeKind::Plus, q);
        b.out(Scale::Ell, GradeKind::Plus, p);
    } else if (claim == "ellminus-proper-in-cesminus") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p <= q, "requires 1 < p <= q <= inf");
        const double gamma = std::isinf(q) ? p / (p + 1.0) : (q - 1.0) / (q + 1.0);
        b.seq(SymbolicSequence::spike(gamma, 0.0));
        b.in(Scale::Ces, GradeKind::Minus, q);
        b.out(Scale::Ell, GradeKind::Minus, p);
    } else if (claim == "ellminus-proper" || claim == "cesminus-proper") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p < q, "requires 1 < p < q <= inf");
        const double r = midpoint(p, q);
        b.seq(SymbolicSequence::power_log(1.0 / r, 0.0));
        const Scale s = claim == "ellminus-proper" ? Scale::Ell : Scale::Ces;
        b.in(s, GradeKind::Minus, q);
        b.out(s, GradeKind::Minus, p);
    } else if (claim == "d-plus-proper") {
        const double p = require_p(params), q = require_q(params);
        require(p >= 1.0 && p < q && std::isfinite(q), "requires 1 <= p < q < inf");
        const double r = midpoint(p, q);
        b.seq(SymbolicSequence::power_log(1.0 / r, 0.0));
        b.in(Scale::D, GradeKind::Plus, q);
        b.out(Scale::D, GradeKind::Plus, p);
    } else if (claim == "d-minus-proper") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p < q, "requires 1 < p < q <= inf");
        const double r = midpoint(p, q);
        b.seq(SymbolicSequence::power_log(1.0 / r, 0.0));
        b.in(Scale::D, GradeKind::Minus, q);
        b.out(Scale::D, GradeKind::Minus, p);
    } else if (claim == "dplus-proper-chain") {
        const double p = require_p(params), q = require_q(params);
        require(p >= 1.0 && p <= q && std::isfinite(q), "requires 1 <= p <= q < inf");
        b.seq(SymbolicSequence::spike(0.0, 1.0 / std::max(q - 0.5, 1.0)));
        b.in(Scale::Ell, GradeKind::Plus, q);
        b.out(Scale::D, GradeKind::Plus, p);
    } else if (claim == "dminus-proper-chain") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p <= q, "requires 1 < p <= q <= inf");
        const double delta = std::isinf(q) ? 1.0 / (p + 1.0) : 2.0 / (1.0 + q);
        b.seq(SymbolicSequence::spike(0.0, delta));
        b.in(Scale::Ell, GradeKind::Minus, q);
        b.out(Scale::D, GradeKind::Minus, p);
    } else if (claim == "d-into-dminus-proper") {
        const double p = require_p(params), q = require_q(params);
        require(p > 1.0 && p < q, "requires 1 < p < q <= inf");
        const double r = midpoint(p, q);
        b.seq(SymbolicSequence::power_log(1.0 / r, 0.0));
        b.in(Scale::D, GradeKind::Minus, q);
        b.out(Scale::D, GradeKind::Exact, p);
    } else if (claim == "bennett-fails-ellplus") {
        const double p = require_p(params);
        require(p >= 1.0 && std::isfinite(p), "requires 1 <= p < inf");
        if (p >= 1.3)
            b.seq(SymbolicSequence::spike((p - 1.0) / (p + 1.0), 0.0));
        else
            b.seq(SymbolicSequence::spike(0.0, 1.0 / (p + 1.0)));
        b.in(Scale::Ces, GradeKind::Plus, p);
        b.out(Scale::Ell, GradeKind::Plus, p);
        b.averaged_in(Scale::Ell, GradeKind::Plus, p);
    } else if (claim == "bennett-fails-ellminus") {
        const double p = require_p(params);
        require(p > 1.0, "requires 1 < p <= inf");
        const double gamma = std::isinf(p) ? 0.5 : (p - 1.0) / (2.0 * p);
        b.seq(SymbolicSequence::spike(gamma, 0.0));
        b.in(Scale::Ces, GradeKind::Minus, p);
        b.out(Scale::Ell, GradeKind::Minus, p);
        b.averaged_in(Scale::Ell, GradeKind::Minus, p);
    } else if (claim == "bennett-fails-dplus") {
        const double p = require_p(params);
        require(p >= 1.0 && std::isfinite(p), "requires 1 <= p < inf");
        b.seq(SymbolicSequence::spike(0.0, 2.0 / (p + 1.0)));
        b.in(Scale::Ell, GradeKind::Plus, p);
        b.out(Scale::D, GradeKind::Plus, p);
        b.averaged_in(Scale::D, GradeKind::Plus, p);
    } else if (claim == "bennett-fails-dminus") {
        const double p = require_p(params);
        require(p > 1.0, "requires 1 < p <= inf");
        const double delta = std::isinf(p) ? 0.5 : 2.0 / (p + 1.0);
        b.seq(SymbolicSequence::spike(0.0, delta));
        b.in(Scale::Ell, GradeKind::Minus, p);
        b.out(Scale::D, GradeKind::Minus, p);
        b.averaged_in(Scale::D, GradeKind::Minus, p);
    } else {
        throw UnknownClaim("unknown claim: " + claim);
    }

    // Re-verify every assertion through the classifier and attach numeric
    // evidence; any mismatch is a construction error.
    WitnessResult& res = b.result;
    for (WitnessAssertion& a : res.assertions) {
        Verdict v;
        if (a.target == AssertionTarget::Sequence) {
            v = membership(res.sequence, a.space);
        } else {
            v = membership_from_class(cesaro_class(res.sequence), a.space);
        }
        a.observed = v.status;
        if (a.observed != a.expected)
            throw WitnessVerificationError("witness for \"" + claim + "\" failed at " +
                                           format_space(a.space));
        a.evidence_exponent = evidence_exponent(a.space, v.profile, a.expected);
        a.evidence =
            evidence_norm(res.sequence, a.target, a.space.scale, a.evidence_exponent, evidence_N);
        const bool evidence_finite = a.evidence.method != NormMethod::DivergentLowerBound;
        const bool below_crit = a.evidence_exponent < v.profile.crit ||
                                (a.evidence_exponent == v.profile.crit && !v.profile.attained);
        if (a.expected == Status::In && !evidence_finite)
            throw WitnessVerificationError("witness for \"" + claim +
                                           "\": missing finite enclosure at " +
                                           format_space(a.space));
        if (a.expected == Status::Out && below_crit && evidence_finite)
            throw WitnessVerificationError("witness for \"" + claim +
                                           "\": missing divergence certificate at " +
                                           format_space(a.space));
    }
    return res;
}

std::vector<WitnessParams> default_witness_params(const std::string& claim) {
    auto pq = [](double p, double q) { return WitnessParams{p, q}; };
    auto only_p = [](double p) { return WitnessParams{p, std::nullopt}; };
    const bool known =
        std::any_of(list_claims().begin(), list_claims().end(),
                    [&](const ClaimInfo& c) { return c.id == claim; });
    if (!known) throw UnknownClaim("unknown claim: " + claim);

    if (claim == "bennett-fails-ellplus" || claim == "bennett-fails-dplus")
        return {only_p(1.0), only_p(2.0), only_p(3.5)};
    if (claim == "bennett-fails-ellminus" || claim == "bennett-fails-dminus")
        return {only_p(1.5), only_p(2.0), only_p(kInf)};
    if (claim == "ellplus-proper-in-cesplus" || claim == "dplus-proper-chain")
        return {pq(1.0, 1.0), pq(2.0, 3.0), pq(1.5, 4.0)};
    if (claim == "d-plus-proper") return {pq(1.0, 2.0), pq(2.0, 3.0), pq(1.5, 4.0)};
    if (claim == "ellminus-proper-in-cesminus" || claim == "dminus-proper-chain")
        return {pq(2.0, 2.0), pq(1.5, 3.0), pq(2.0, kInf)};
    if (claim == "ellminus-proper" || claim == "cesminus-proper" || claim == "d-minus-proper" ||
        claim == "d-into-dminus-proper")
        return {pq(1.5, 2.5), pq(2.0, 4.0), pq(3.0, kInf)};
    if (claim == "ell-proper-in-ces" || claim == "d-proper-in-ell" || claim == "d-proper-in-ces")
        return {pq(2.0, 2.0), pq(1.5, 3.0), pq(2.0, 4.0)};
    // remaining exact-grade properness rows: 1 < p < q < inf
    return {pq(1.5, 2.5), pq(2.0, 3.0), pq(2.0, 4.0)};
}

json WitnessResult::to_json() const {
    json j;
    j["claim"] = claim;
    json jp = json::object();
    if (params.p) jp["p"] = std::isinf(*params.p) ? json("inf") : json(*params.p);
    if (params.q) jp["q"] = std::isinf(*params.q) ? json("inf") : json(*params.q);
    j["params"] = jp;
    j["sequence"] = sequence.to_json();
    j["assertions"] = json::array();
    for (const auto& a : assertions) {
        json ja;
        ja["target"] = a.target == AssertionTarget::Sequence ? "x" : "C(|x|)";
        ja["space"] = format_space(a.space);
        ja["expected"] = a.expected == Status::In ? "IN" : "OUT";
        ja["observed"] = a.observed == Status::In    ? "IN"
                         : a.observed == Status::Out ? "OUT"
                                                     : "UNSUPPORTED";
        ja["evidence_exponent"] = a.evidence_exponent;
        ja["evidence"] = enclosure_to_json(a.evidence);
        j["assertions"].push_back(ja);
    }
    return j;
}

}  // namespace cesp

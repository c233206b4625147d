#include "cesp/classify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cesp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grade_domain(GradeKind grade, double p) {
    switch (grade) {
        case GradeKind::Exact:
            if (!(p > 1.0) || !std::isfinite(p))
                throw std::invalid_argument("exact grade requires p in (1, inf)");
            return;
        case GradeKind::Plus:
            if (!(p >= 1.0) || !std::isfinite(p))
                throw std::invalid_argument("plus grade requires p in [1, inf)");
            return;
        case GradeKind::Minus:
            if (!(p > 1.0) || std::isnan(p))
                throw std::invalid_argument("minus grade requires p in (1, inf]");
            return;
    }
}

MembershipProfile make_profile(Scale scale, double crit, bool attained) {
    MembershipProfile m;
    m.scale = scale;
    m.crit = crit;
    m.attained = attained;
    return m;
}

}  // namespace

SpaceSpec SpaceSpec::exact(Scale s, double p) {
    check_grade_domain(GradeKind::Exact, p);
    return SpaceSpec{s, GradeKind::Exact, p};
}
SpaceSpec SpaceSpec::plus(Scale s, double p) {
    check_grade_domain(GradeKind::Plus, p);
    return SpaceSpec{s, GradeKind::Plus, p};
}
SpaceSpec SpaceSpec::minus(Scale s, double p) {
    check_grade_domain(GradeKind::Minus, p);
    return SpaceSpec{s, GradeKind::Minus, p};
}

AsymptoticClass cesaro_class(const SymbolicSequence& seq) {
    switch (seq.family()) {
        case Family::PowerLog: {
            const double a = seq.a(), b = seq.b();
            if (a < 1.0) return {a, b, 0.0};            // prefix sums ~ n^{1-a} L^{-b}
            if (a > 1.0 || b > 1.0) return {1.0, 0.0, 0.0};  // summable: C(|x|)_n ~ S/n
            if (b == 1.0) return {1.0, 0.0, -1.0};      // prefix sums ~ LL(n)
            return {1.0, b - 1.0, 0.0};                 // prefix sums ~ L^{1-b}/(1-b)
        }
        case Family::LacunarySpike: {
            const double g = seq.gamma(), d = seq.delta();
            if (g < 0.0) return {1.0, 0.0, 0.0};  // summable heights
            if (g == 0.0) {
                if (d > 1.0) return {1.0, 0.0, 0.0};
                if (d == 1.0) return {1.0, 0.0, -1.0};
                return {1.0, d - 1.0, 0.0};  // prefix ~ (log2 n)^{1-d}
            }
            if (g == 1.0) return {0.0, d, 0.0};  // C(|x|)_n ~ (log2 n)^{-d}
            return {1.0 - g, d, 0.0};            // largest spike dominates the prefix
        }
        case Family::UnitBasis:
        case Family::FiniteSupport:
            return {1.0, 0.0, 0.0};  // C(|x|)_n = S/n beyond the support
    }
    return AsymptoticClass::not_representable();
}

AsymptoticClass cesaro_of_class(const AsymptoticClass& k) {
    if (!k.representable) return k;
    if (k.a < 1.0) return k;  // prefix sums keep the shape, up to constants
    if (k.a > 1.0) return {1.0, 0.0, 0.0};
    // a == 1: integrability decided by the log exponents.
    if (k.b > 1.0 || (k.b == 1.0 && k.c > 1.0)) return {1.0, 0.0, 0.0};
    if (k.b < 1.0) return {1.0, k.b - 1.0, k.c};
    // b == 1
    if (k.c < 1.0) return {1.0, 0.0, k.c - 1.0};
    return AsymptoticClass::not_representable();  // a = b = c = 1: third log level
}

bool class_series_converges(const AsymptoticClass& k, double q) {
    if (!k.representable) throw std::domain_error("class is not representable");
    const double aq = k.a * q, bq = k.b * q, cq = k.c * q;
    if (aq > 1.0) return true;
    if (aq < 1.0) return false;
    if (bq > 1.0) return true;
    if (bq < 1.0) return false;
    return cq > 1.0;
}

MembershipProfile profile_from_class(const AsymptoticClass& k, Scale scale) {
    if (!k.representable) throw std::domain_error("class is not representable");
    if (scale == Scale::Ces) return profile_from_class(cesaro_of_class(k), Scale::Ell);
    // Ell and D agree on class-represented sequences: the suffix supremum of a
    // Theta(shape) sequence with eventually decreasing shape is Theta(shape).
    MembershipProfile m;
    m.scale = scale;
    if (k.a <= 0.0) {
        m.crit = kInf;
        m.attained = false;
        return m;
    }
    m.crit = std::max(1.0, 1.0 / k.a);
    m.attained = class_series_converges(k, m.crit);
    return m;
}

MembershipProfile ell_profile(const SymbolicSequence& seq) {
    switch (seq.family()) {
        case Family::PowerLog: {
            const double a = seq.a(), b = seq.b();
            if (a == 0.0) return make_profile(Scale::Ell, kInf, false);
            const double crit = std::max(1.0, 1.0 / a);
            return make_profile(Scale::Ell, crit, b * crit > 1.0);
        }
        case Family::LacunarySpike: {
            const double g = seq.gamma(), d = seq.delta();
            if (g < 0.0) return make_profile(Scale::Ell, 1.0, false);
            if (g > 0.0) return make_profile(Scale::Ell, kInf, false);
            if (d == 0.0) return make_profile(Scale::Ell, kInf, false);
            const double crit = std::max(1.0, 1.0 / d);
            return make_profile(Scale::Ell, crit, d * crit > 1.0);
        }
        case Family::UnitBasis:
        case Family::FiniteSupport:
            return make_profile(Scale::Ell, 1.0, false);
    }
    throw std::logic_error("unreachable");
}

MembershipProfile ces_profile(const SymbolicSequence& seq) {
    MembershipProfile m = profile_from_class(cesaro_class(seq), Scale::Ell);
    m.scale = Scale::Ces;
    return m;
}

MembershipProfile d_profile(const SymbolicSequence& seq) {
    switch (seq.family()) {
        case Family::PowerLog: {
            MembershipProfile m = ell_profile(seq);  // envelope equals the sequence eventually
            m.scale = Scale::D;
            return m;
        }
        case Family::LacunarySpike: {
            const double g = seq.gamma(), d = seq.delta();
            if (g > 0.0 || g == 0.0) return make_profile(Scale::D, kInf, false);
            // Envelope constant on dyadic blocks: block j contributes
            // 2^{j-1} h_j^q, so sum_j 2^{j(1 + gamma q)} j^{-delta q} decides.
            const double crit_raw = -1.0 / g;
            return make_profile(Scale::D, std::max(1.0, crit_raw), d * crit_raw > 1.0);
        }
        case Family::UnitBasis:
        case Family::FiniteSupport:
            return make_profile(Scale::D, 1.0, false);
    }
    throw std::logic_error("unreachable");
}

MembershipProfile profile_of(const SymbolicSequence& seq, Scale scale) {
    switch (scale) {
        case Scale::Ell:
            return ell_profile(seq);
        case Scale::Ces:
            return ces_profile(seq);
        case Scale::D:
            return d_profile(seq);
    }
    throw std::logic_error("unreachable");
}

bool profile_in(const MembershipProfile& profile, GradeKind grade, double p) {
    check_grade_domain(grade, p);
    switch (grade) {
        case GradeKind::Exact:
            return profile.crit < p || (profile.crit == p && profile.attained);
        case GradeKind::Plus:
            return profile.crit <= p;
        case GradeKind::Minus:
            return profile.crit < p;
    }
    return false;
}

Verdict membership(const SymbolicSequence& seq, const SpaceSpec& spec) {
    check_grade_domain(spec.grade, spec.p);
    Verdict v;
    v.profile = profile_of(seq, spec.scale);
    v.status = profile_in(v.profile, spec.grade, spec.p) ? Status::In : Status::Out;
    return v;
}

Verdict membership_from_class(const AsymptoticClass& k, const SpaceSpec& spec) {
    check_grade_domain(spec.grade, spec.p);
    Verdict v;
    if (!k.representable) {
        v.status = Status::Unsupported;
        v.note = "asymptotic class outside the supported log tower";
        return v;
    }
    v.profile = profile_from_class(k, spec.scale);
    v.status = profile_in(v.profile, spec.grade, spec.p) ? Status::In : Status::Out;
    return v;
}

SpaceSpec parse_space(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("space spec must look like \"ell:2\", \"ces:2+\" or \"d:3-\"");
    const std::string_view scale_text = text.substr(0, colon);
    std::string grade_text{text.substr(colon + 1)};
    Scale scale;
    if (scale_text == "ell")
        scale = Scale::Ell;
    else if (scale_text == "ces")
        scale = Scale::Ces;
    else if (scale_text == "d")
        scale = Scale::D;
    else
        throw std::invalid_argument("unknown scale (expected ell, ces or d)");

    GradeKind grade = GradeKind::Exact;
    if (!grade_text.empty() && (grade_text.back() == '+' || grade_text.back() == '-')) {
        grade = grade_text.back() == '+' ? GradeKind::Plus : GradeKind::Minus;
        grade_text.pop_back();
    }
    double p;
    if (grade_text == "inf") {
        p = std::numeric_limits<double>::infinity();
    } else {
        std::size_t used = 0;
        try {
            p = std::stod(grade_text, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("could not parse grade exponent: " + grade_text);
        }
        if (used != grade_text.size())
            throw std::invalid_argument("could not parse grade exponent: " + grade_text);
    }
    check_grade_domain(grade, p);
    return SpaceSpec{scale, grade, p};
}

std::string scale_name(Scale scale) {
    switch (scale) {
        case Scale::Ell:
            return "ell";
        case Scale::Ces:
            return "ces";
        case Scale::D:
            return "d";
    }
    return "";
}

std::string format_space(const SpaceSpec& spec) {
    std::string out = scale_name(spec.scale) + ":";
    if (std::isinf(spec.p)) {
        out += "inf";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", spec.p);
        out += buf;
    }
    if (spec.grade == GradeKind::Plus) out += '+';
    if (spec.grade == GradeKind::Minus) out += '-';
    return out;
}

}  // namespace cesp

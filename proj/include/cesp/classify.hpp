// Symbolic membership classification for the ell / ces / d scales and their
// graded (p+, p-) variants: critical exponents, attainment flags, asymptotic
// classes of averaged sequences, and the verdict reduction.
#ifndef CESP_CLASSIFY_HPP
#define CESP_CLASSIFY_HPP

#include <string>
#include <string_view>

#include "cesp/sequence.hpp"

namespace cesp {

// Carrier for Theta(n^{-a} * L(n)^{-b} * LL(n)^{-c}) asymptotics, with
// L(n) = 1 + ln n and LL(n) = 1 + ln L(n). Membership of the q-th power
// series in ell_1 is decidable from (a, b, c) by the lexicographic integral
// test. Classes needing a deeper log tower are flagged not representable.
struct AsymptoticClass {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    bool representable = true;

    static AsymptoticClass not_representable() {
        AsymptoticClass k;
        k.representable = false;
        return k;
    }
};

enum class Scale { Ell, Ces, D };

// Critical exponent in [1, +inf] plus attainment flag for one base scale.
// Membership at every grade reduces to this pair.
struct MembershipProfile {
    double crit = 1.0;  // +inf when the sequence lies in no space of the scale
    bool attained = false;
    Scale scale = Scale::Ell;
};

enum class GradeKind { Exact, Plus, Minus };

// One of the nine spaces: scale x {Exact(p), Plus(p), Minus(p)}.
// Domains: Exact p in (1, inf); Plus p in [1, inf); Minus p in (1, inf].
struct SpaceSpec {
    Scale scale = Scale::Ell;
    GradeKind grade = GradeKind::Exact;
    double p = 2.0;

    static SpaceSpec exact(Scale s, double p);
    static SpaceSpec plus(Scale s, double p);
    static SpaceSpec minus(Scale s, double p);
};

enum class Status { In, Out, Unsupported };

struct Verdict {
    Status status = Status::Unsupported;
    MembershipProfile profile;
    std::string note;
};

// Asymptotic class of C(|x|) for a symbolic family.
AsymptoticClass cesaro_class(const SymbolicSequence& seq);

// Class of C(y) for a sequence y with class k; iterating yields classes of
// C^2(|x|), C^3(|x|), ... Returns not_representable() at the (1,1,1) corner,
// where a third log level would be needed.
AsymptoticClass cesaro_of_class(const AsymptoticClass& k);

// Convergence of sum_n n^{-a q} L^{-b q} LL^{-c q} (the lexicographic test).
bool class_series_converges(const AsymptoticClass& k, double q);

MembershipProfile ell_profile(const SymbolicSequence& seq);
MembershipProfile ces_profile(const SymbolicSequence& seq);
MembershipProfile d_profile(const SymbolicSequence& seq);
MembershipProfile profile_of(const SymbolicSequence& seq, Scale scale);

// Profile of a class-represented nonnegative sequence (used for C(|x|) and
// its iterates). For such sequences the envelope has the same class, so the
// Ell and D profiles coincide; the Ces profile classifies one more averaging.
// Throws std::domain_error when the class is not representable.
MembershipProfile profile_from_class(const AsymptoticClass& k, Scale scale);

// The verdict reduction:
//   Exact(p): In iff crit < p or (crit == p and attained)
//   Plus(p):  In iff crit <= p
//   Minus(p): In iff crit < p
bool profile_in(const MembershipProfile& profile, GradeKind grade, double p);

Verdict membership(const SymbolicSequence& seq, const SpaceSpec& spec);
Verdict membership_from_class(const AsymptoticClass& k, const SpaceSpec& spec);

// Space spec grammar: "ell:2", "ces:2+", "d:3-", "ces:inf-".
SpaceSpec parse_space(std::string_view text);
std::string format_space(const SpaceSpec& spec);
std::string scale_name(Scale scale);

}  // namespace cesp

#endif

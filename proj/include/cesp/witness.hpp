// Constructive witnesses: for every properness / failure claim in the
// catalog, an explicit family whose classified memberships certify the claim,
// re-verified on construction and corroborated by norm enclosures.
#ifndef CESP_WITNESS_HPP
#define CESP_WITNESS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cesp/classify.hpp"
#include "cesp/norms.hpp"
#include "cesp/sequence.hpp"

namespace cesp {

struct ClaimInfo {
    std::string id;
    std::string statement;  // the separation the witness realizes
    std::string params;     // expected parameter shape, e.g. "1 < p < q"
};

// Full catalog, deterministic order.
const std::vector<ClaimInfo>& list_claims();

struct UnknownClaim : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParamsOutOfDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WitnessVerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AssertionTarget { Sequence, Averaged };  // x itself or C(|x|)

struct WitnessAssertion {
    AssertionTarget target = AssertionTarget::Sequence;
    SpaceSpec space;
    Status expected = Status::In;
    Status observed = Status::Unsupported;
    double evidence_exponent = 0.0;  // exact-grade exponent the evidence was computed at
    NormEnclosure evidence;
};

struct WitnessParams {
    std::optional<double> p;
    std::optional<double> q;
};

struct WitnessResult {
    std::string claim;
    WitnessParams params;
    SymbolicSequence sequence = SymbolicSequence::unit_basis(1);
    std::vector<WitnessAssertion> assertions;

    json to_json() const;
};

// Builds and re-verifies the witness for one claim. Throws UnknownClaim,
// ParamsOutOfDomain, or WitnessVerificationError when a classified verdict
// contradicts the claim. `evidence_N` is the truncation budget for the norm
// enclosures attached to each assertion.
WitnessResult build_witness(const std::string& claim, const WitnessParams& params,
                            std::int64_t evidence_N = 200000);

// Three representative parameter choices spanning each claim's domain.
std::vector<WitnessParams> default_witness_params(const std::string& claim);

}  // namespace cesp

#endif

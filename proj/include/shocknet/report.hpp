#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "shocknet/reliability.hpp"
#include "shocknet/signature.hpp"

namespace shocknet {

/// Writes each line of `manifest` as a '#' comment.
void write_manifest(std::ostream& out, std::string_view manifest);

/// kind,index,numerator,denominator,decimal
void write_signature_csv(std::ostream& out, const std::vector<SignatureVector>& signatures);

/// kind,index,numerator,denominator,decimal,stderr (numerator/denominator = count/trials)
void write_signature_estimate_csv(std::ostream& out, const SignatureEstimate& est);

/// Reads exact rows back; one vector per kind, in order of first appearance.
std::vector<SignatureVector> read_signature_csv(std::istream& in);

/// t,reliability,stderr,truncation_bound (stderr left empty for analytic curves)
void write_curve_csv(std::ostream& out, const ReliabilityCurve& curve);

/// t,reliability,hazard,hazard_numeric
void write_hazard_csv(std::ostream& out, const HazardCurve& curve);

}  // namespace shocknet

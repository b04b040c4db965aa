#include "shocknet/report.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "shocknet/errors.hpp"
#include "shocknet/format.hpp"

namespace shocknet {

namespace {

std::string number(double x) { return format_double(x); }

}  // namespace

void write_manifest(std::ostream& out, std::string_view manifest) {
  std::istringstream in{std::string(manifest)};
  for (std::string line; std::getline(in, line);) out << "# " << line << '\n';
}

void write_signature_csv(std::ostream& out, const std::vector<SignatureVector>& signatures) {
  out << "kind,index,numerator,denominator,decimal\n";
  for (const auto& sig : signatures) {
    // Entries share the least common denominator of the vector.
    BigInt den = 1;
    for (const auto& p : sig.probabilities) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(p));
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const auto& p = sig.probabilities[i];
      const BigInt num = boost::multiprecision::numerator(p) * (den / boost::multiprecision::denominator(p));
      out << to_string(sig.kind) << ',' << i + 1 << ',' << num << ',' << den << ','
          << number(to_double(p)) << '\n';
    }
  }
}

void write_signature_estimate_csv(std::ostream& out, const SignatureEstimate& est) {
  out << "kind,index,numerator,denominator,decimal,stderr\n";
  for (std::size_t i = 0; i < est.counts.size(); ++i)
    out << to_string(est.kind) << ',' << i + 1 << ',' << est.counts[i] << ',' << est.trials << ','
        << number(est.estimate[i]) << ',' << number(est.standard_error[i]) << '\n';
}

std::vector<SignatureVector> read_signature_csv(std::istream& in) {
  std::vector<SignatureVector> out;
  std::map<SignatureKind, std::size_t> slot;
  std::size_t line_no = 0;
  bool header = false;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line.rfind("kind,index,numerator,denominator", 0) != 0)
        throw ParseError(line_no, "expected signature CSV header");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string kind, index, num, den;
    if (!std::getline(row, kind, ',') || !std::getline(row, index, ',') ||
        !std::getline(row, num, ',') || !std::getline(row, den, ','))
      throw ParseError(line_no, "expected kind,index,numerator,denominator");
    SignatureKind k{};
    std::size_t i = 0;
    Rational value;
    try {
      k = parse_signature_kind(kind);
      i = std::stoul(index);
      value = Rational(BigInt(num), BigInt(den));
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    auto [it, inserted] = slot.emplace(k, out.size());
    if (inserted) out.push_back(SignatureVector{k, {}});
    auto& sig = out[it->second];
    if (i != sig.size() + 1) throw ParseError(line_no, "signature indices must be consecutive from 1");
    sig.probabilities.push_back(value);
  }
  if (out.empty()) throw ValidationError("no signature rows found");
  for (const auto& sig : out) validate(sig);
  return out;
}

void write_curve_csv(std::ostream& out, const ReliabilityCurve& curve) {
  out << "t,reliability,stderr,truncation_bound\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << number(curve.grid[i]) << ',' << number(curve.values[i]) << ',';
    if (!curve.standard_error.empty()) out << number(curve.standard_error[i]);
    out << ',' << number(curve.truncation_bound) << '\n';
  }
}

void write_hazard_csv(std::ostream& out, const HazardCurve& curve) {
  const auto numeric = numeric_hazard(curve.grid, curve.reliability);
  out << "t,reliability,hazard,hazard_numeric\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << number(curve.grid[i]) << ',' << number(curve.reliability[i]) << ','
        << number(curve.hazard[i]) << ',';
    if (!std::isnan(numeric[i])) out << number(numeric[i]);
    out << '\n';
  }
}

}  // namespace shocknet

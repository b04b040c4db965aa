#include "shocknet/ordering.hpp"

#include <algorithm>
#include <cmath>

#include "shocknet/errors.hpp"

namespace shocknet {

std::string_view to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::st: return "st";
    case OrderRelation::hr: return "hr";
    case OrderRelation::lr: return "lr";
  }
  return "?";
}

namespace {

std::vector<double> padded(std::span<const double> v, std::size_t len) {
  std::vector<double> out(v.begin(), v.end());
  out.resize(len, 0.0);
  return out;
}

void require_pmf(std::span<const double> v) {
  double total = 0;
  for (double x : v) {
    if (!(x >= 0) || !std::isfinite(x)) throw ValidationError("pmf entries must be finite and >= 0");
    total += x;
  }
  if (total > 1 + 1e-9) throw ValidationError("pmf entries sum above 1");
}

// survival[k] = P(X > k) for k = 0..len, with any missing mass beyond len.
std::vector<double> survival_of(const std::vector<double>& pmf) {
  std::vector<double> s(pmf.size() + 1);
  double cdf = 0;
  s[0] = 1;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    cdf += pmf[k];
    s[k + 1] = std::max(0.0, 1 - cdf);
  }
  return s;
}

OrderingVerdict fail_at(OrderRelation r, std::size_t index) { return {r, false, index}; }

}  // namespace

OrderingVerdict order_check(std::span<const double> a_in, std::span<const double> b_in,
                            OrderRelation relation) {
  require_pmf(a_in);
  require_pmf(b_in);
  const std::size_t len = std::max(a_in.size(), b_in.size());
  const auto a = padded(a_in, len);
  const auto b = padded(b_in, len);

  switch (relation) {
    case OrderRelation::st: {
      const auto sa = survival_of(a);
      const auto sb = survival_of(b);
      for (std::size_t k = 1; k <= len; ++k)
        if (sa[k] > sb[k] + kOrderingSlack) return fail_at(relation, k);
      return {relation, true, std::nullopt};
    }
    case OrderRelation::hr: {
      const auto sa = survival_of(a);
      const auto sb = survival_of(b);
      // Sbar_b(k)/Sbar_a(k) <= Sbar_b(k+1)/Sbar_a(k+1), cross-multiplied.
      for (std::size_t k = 0; k < len; ++k)
        if (sb[k] * sa[k + 1] > sb[k + 1] * sa[k] + kOrderingSlack) return fail_at(relation, k + 1);
      return {relation, true, std::nullopt};
    }
    case OrderRelation::lr: {
      std::size_t last_support = 0;
      for (std::size_t k = 0; k < len; ++k)
        if (a[k] > 0) last_support = k;
      std::optional<std::size_t> prev;
      for (std::size_t k = 0; k < len; ++k) {
        if (a[k] == 0) {
          if (b[k] > 0 && k < last_support) return fail_at(relation, k + 1);
          continue;
        }
        if (prev && b[*prev] * a[k] > b[k] * a[*prev] + kOrderingSlack)
          return fail_at(relation, k + 1);
        prev = k;
      }
      return {relation, true, std::nullopt};
    }
  }
  return {relation, true, std::nullopt};
}

Tp2Verdict tp2_check(const std::vector<std::vector<double>>& m) {
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (m[i].size() != m[i + 1].size()) throw ValidationError("kernel rows differ in length");
    for (std::size_t j = 0; j + 1 < m[i].size(); ++j) {
      const double main = m[i + 1][j + 1] * m[i][j];
      const double off = m[i][j + 1] * m[i + 1][j];
      if (main < 0 || off < 0 || m[i][j] < 0) throw ValidationError("kernel entries must be >= 0");
      const double minor = main - off;
      if (minor < -kOrderingSlack * std::max(main, off)) return {false, i, j, minor};
    }
  }
  return {};
}

std::vector<std::vector<double>> count_pmf_matrix(const FirstArrivalLaw& law,
                                                  std::span<const double> grid, std::size_t kmax) {
  std::vector<std::vector<double>> m;
  m.reserve(grid.size());
  for (double t : grid) {
    if (t < 0) throw ValidationError("time must be >= 0");
    m.push_back(poisson_pmf_table(law.mvf(t), kmax));
  }
  return m;
}

AgingVerdict ihra_check(const BetaSequence& beta, std::size_t K) {
  if (K < 2) throw ValidationError("IHRA check needs K >= 2");
  if (beta.values.size() <= K) throw ValidationError("beta sequence shorter than K");
  for (std::size_t k = 1; k < K; ++k) {
    const double cur = std::pow(beta[k], 1.0 / static_cast<double>(k));
    const double next = std::pow(beta[k + 1], 1.0 / static_cast<double>(k + 1));
    if (cur < next - kOrderingSlack) return {false, k};
  }
  return {};
}

RatioProfile ihr_ratio_profile(const BetaSequence& beta, std::size_t K) {
  if (beta.values.size() <= K) throw ValidationError("beta sequence shorter than K");
  RatioProfile prof;
  for (std::size_t k = 0; k < K; ++k) {
    if (!(beta[k] > 0)) throw NumericError("beta_" + std::to_string(k) + " is zero; ratio undefined");
    prof.ratios.push_back(beta[k + 1] / beta[k]);
  }
  for (std::size_t k = 1; k < prof.ratios.size(); ++k) {
    const double diff = prof.ratios[k] - prof.ratios[k - 1];
    if (std::abs(diff) > kOrderingSlack) prof.constant = false;
    if (diff > kOrderingSlack && prof.non_increasing) {
      prof.non_increasing = false;
      prof.first_increase = k;
    }
  }
  return prof;
}

}  // namespace shocknet

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "shocknet/errors.hpp"
#include "shocknet/shock_model.hpp"
#include "shocknet/signature.hpp"

using namespace shocknet;
using doctest::Approx;

namespace {

std::vector<FirstArrivalLaw> all_laws() {
  return {FirstArrivalLaw::exponential(1), FirstArrivalLaw::weibull(2, 1),
          FirstArrivalLaw::linear_hazard(1, 1), FirstArrivalLaw::weibull(0.7, 2.5),
          FirstArrivalLaw::piecewise({1, 2, 4}, {0.5, 2, 3})};
}

SignatureVector sig_of(SignatureKind kind, std::vector<Rational> p) { return {kind, std::move(p)}; }

// Distribution of the number of failed links after k shocks, by convolving
// one binomial step at a time over the surviving links.
std::vector<double> damage_by_convolution(std::size_t n, double q, std::size_t k) {
  std::vector<double> dist(n + 1, 0.0);
  dist[0] = 1;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<double> next(n + 1, 0.0);
    for (std::size_t failed = 0; failed <= n; ++failed) {
      if (dist[failed] == 0) continue;
      const std::size_t alive = n - failed;
      for (std::size_t w = 0; w <= alive; ++w) {
        const double pw = std::tgamma(alive + 1.0) / (std::tgamma(w + 1.0) * std::tgamma(alive - w + 1.0)) *
                          std::pow(1 - q, double(w)) * std::pow(q, double(alive - w));
        next[failed + w] += dist[failed] * pw;
      }
    }
    dist = next;
  }
  return dist;
}

}  // namespace

TEST_CASE("law mean value functions") {
  const auto e = FirstArrivalLaw::exponential(2);
  CHECK(e.mvf(1.5) == Approx(3));
  CHECK(e.intensity(7) == Approx(2));
  const auto w = FirstArrivalLaw::weibull(2, 1);
  CHECK(w.mvf(3) == Approx(9));
  CHECK(w.intensity(3) == Approx(6));
  const auto l = FirstArrivalLaw::linear_hazard(1, 1);
  CHECK(l.mvf(1) == Approx(2));
  CHECK(l.intensity(1) == Approx(3));
  CHECK(l.survival(1) == Approx(std::exp(-2.0)));
  const auto p = FirstArrivalLaw::piecewise({1, 2}, {1, 3});
  CHECK(p.mvf(0.5) == Approx(0.5));
  CHECK(p.mvf(1.5) == Approx(2));
  CHECK(p.mvf(3) == Approx(5));
  CHECK(p.intensity(1.5) == Approx(2));
  for (const auto& law : all_laws()) {
    CHECK(law.mvf(0) == 0);
    CHECK(law.survival(0) == 1);
    for (double x : {0.01, 0.3, 1.0, 2.5, 10.0}) CHECK(law.mvf(law.inverse_mvf(x)) == Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("piecewise law with a flat tail never reaches large counts") {
  const auto p = FirstArrivalLaw::piecewise({1, 2}, {1, 1});
  CHECK(std::isinf(p.inverse_mvf(1.5)));
  CHECK(p.inverse_mvf(1.0) == Approx(1));
}

TEST_CASE("law validation") {
  CHECK_THROWS_AS(FirstArrivalLaw::exponential(0), ValidationError);
  CHECK_THROWS_AS(FirstArrivalLaw::weibull(-1, 1), ValidationError);
  CHECK_THROWS_AS(FirstArrivalLaw::linear_hazard(0, 0), ValidationError);
  CHECK_THROWS_AS(FirstArrivalLaw::piecewise({1, 1}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(FirstArrivalLaw::piecewise({1, 2}, {2, 1}), ValidationError);
  CHECK_THROWS_AS(FirstArrivalLaw::piecewise({0, 1}, {1, 2}), ValidationError);
}

TEST_CASE("law and damage parsing") {
  CHECK(parse_law("exp:rate=2").mvf(1) == Approx(2));
  CHECK(parse_law("weibull:shape=2,scale=2").mvf(4) == Approx(4));
  CHECK(parse_law("linhaz:a=1,b=1").mvf(2) == Approx(6));
  CHECK(parse_law("exp:rate=1").describe() == "exp:rate=1");
  CHECK(parse_damage("binomial:p=0.1").describe() == "binomial:p=0.1");
  CHECK(parse_damage("binomial:p=0.25").binomial_params().q == Approx(0.75));
  CHECK(parse_damage("one-per-shock").describe() == "one-per-shock");
  CHECK(parse_damage("fatal").is_fatal());
  CHECK(parse_damage("binomial:p=1").binomial_params().q == 0);
  CHECK_THROWS_AS(parse_law("gamma:k=1"), ValidationError);
  CHECK_THROWS_AS(parse_law("exp:rate=x"), ValidationError);
  CHECK_THROWS_AS(parse_law("exp:lambda=1"), ValidationError);
  CHECK_THROWS_AS(parse_law("weibull:shape=2"), ValidationError);
  CHECK_THROWS_AS(parse_damage("binomial:p=0"), ValidationError);
  CHECK_THROWS_AS(parse_damage("binomial:p=1.5"), ValidationError);
  CHECK_THROWS_AS(parse_damage("fatal:p=1"), ValidationError);
  CHECK_THROWS_AS(parse_damage("heavy"), ValidationError);
}

TEST_CASE("mean value function from a CSV file") {
  const std::string path = "shocknet_test_mvf.csv";
  {
    std::ofstream out(path);
    out << "t,Lambda\n# knots\n0,0\n1,0.5\n2,2\n";
  }
  const auto law = parse_law("mvf:file=" + path);
  CHECK(law.mvf(1.5) == Approx(1.25));
  CHECK(law.mvf(3) == Approx(3.5));
  {
    std::ofstream out(path);
    out << "t,Lambda\n0,0\n1,oops\n";
  }
  CHECK_THROWS_AS(parse_law("mvf:file=" + path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_law("mvf:file=/nonexistent/mvf.csv"), ValidationError);
}

TEST_CASE("count pmf spot values") {
  CHECK(count_pmf(FirstArrivalLaw::exponential(1), 1, 0) == Approx(std::exp(-1.0)).epsilon(1e-14));
  for (const auto& law : all_laws()) CHECK(count_pmf(law, 0, 0) == 1);
  CHECK(count_pmf(FirstArrivalLaw::linear_hazard(1, 1), 1, 2) == Approx(2 * std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(count_pmf(FirstArrivalLaw::exponential(1), -1, 0), ValidationError);
}

TEST_CASE("arrival survival") {
  for (const auto& law : all_laws()) {
    for (double t : {0.2, 1.0, 3.0}) CHECK(arrival_survival(law, t, 1) == Approx(law.survival(t)).epsilon(1e-14));
    for (std::size_t k : {1, 2, 5}) CHECK(arrival_survival(law, 0, k) == 1);
  }
  CHECK(arrival_survival(FirstArrivalLaw::exponential(1), 1, 2) == Approx(2 * std::exp(-1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(arrival_survival(FirstArrivalLaw::exponential(1), 1, 0), ValidationError);
}

TEST_CASE("poisson tables agree with direct evaluation") {
  for (double mean : {0.0, 1e-6, 0.5, 3.0, 29.0, 31.0, 150.0, 900.0}) {
    const auto table = poisson_pmf_table(mean, 1200);
    double total = 0;
    for (std::size_t k = 0; k <= 1200; ++k) {
      total += table[k];
      const double direct = poisson_pmf(mean, k);
      if (direct > 1e-250) REQUIRE(table[k] == Approx(direct).epsilon(1e-9));
    }
    CAPTURE(mean);
    CHECK(total == Approx(1).epsilon(1e-12));
  }
}

TEST_CASE("truncation index bounds the Poisson tail") {
  for (double mean : {0.1, 1.0, 5.0, 40.0, 300.0}) {
    const std::size_t K = truncation_index(mean);
    const auto table = poisson_pmf_table(mean, K + 400);
    double tail = 0;
    for (std::size_t k = K + 1; k < table.size(); ++k) tail += table[k];
    CAPTURE(mean);
    CHECK(tail < kTruncationTolerance);
    if (K > 0) {
      double tail_before = table[K];
      for (std::size_t k = K + 1; k < table.size(); ++k) tail_before += table[k];
      CHECK(tail_before > kTruncationTolerance * 1e-3);
    }
  }
  CHECK(truncation_index(0) == 0);
}

TEST_CASE("cumulative damage pmf") {
  CHECK(cumulative_damage_pmf(2, 0.5, 1, 0) == Approx(0.25));
  CHECK(cumulative_damage_pmf(2, 0.5, 1, 1) == Approx(0.5));
  CHECK(cumulative_damage_pmf(2, 0.5, 1, 2) == Approx(0.25));
  CHECK(cumulative_damage_pmf(2, 0.5, 2, 0) == Approx(0.0625));
  CHECK(cumulative_damage_pmf(2, 0.5, 2, 1) == Approx(0.375));
  CHECK(cumulative_damage_pmf(2, 0.5, 2, 2) == Approx(0.5625));
  CHECK(cumulative_damage_pmf(4, 0.7, 400, 4) == Approx(1));
  CHECK(cumulative_damage_pmf(3, 0.7, 0, 0) == 1);
  CHECK_THROWS_AS(cumulative_damage_pmf(2, 0.5, 1, 3), ValidationError);
  for (std::size_t n : {1, 3, 6})
    for (double q : {0.1, 0.5, 0.93})
      for (std::size_t k : {1, 2, 5}) {
        const auto conv = damage_by_convolution(n, q, k);
        for (std::size_t j = 0; j <= n; ++j) REQUIRE(cumulative_damage_pmf(n, q, k, j) == Approx(conv[j]).epsilon(1e-12));
      }
}

TEST_CASE("beta star: sum and incomplete-beta forms") {
  const auto series3 = sig_of(SignatureKind::tie, {1, 0, 0});
  for (double q : {0.1, 0.5, 0.9})
    for (std::size_t k : {0, 1, 2, 7}) {
      CHECK(beta_star(tail(series3), q, k) == Approx(std::pow(q, 3.0 * k)).epsilon(1e-14));
    }
  const std::vector<SignatureVector> sigs{
      t_signature(fixtures::load("bridge.net")), t_signature(fixtures::load("three_link.net")), series3,
      sig_of(SignatureKind::tie, {0, 0, 1}), sig_of(SignatureKind::tie, {Rational(1, 7), Rational(2, 7), Rational(4, 7)})};
  for (const auto& sig : sigs)
    for (double q = 0.05; q < 1; q += 0.1) {
      double prev = 1;
      for (std::size_t k = 0; k <= 50; ++k) {
        const double b = beta_star(tail(sig), q, k);
        REQUIRE(b >= 0);
        REQUIRE(b <= prev + 1e-15);
        REQUIRE(std::abs(b - beta_star_incomplete_beta(sig, q, k)) < 1e-12);
        prev = b;
      }
    }
}

TEST_CASE("beta general") {
  const auto tail21 = tail(sig_of(SignatureKind::tie, {Rational(6, 13), Rational(7, 13), 0}));
  CHECK(beta_general(tail21, DamageModel::one_per_shock(), 1) == Approx(7.0 / 13));
  CHECK(beta_general(tail21, DamageModel::one_per_shock(), 0) == 1);
  CHECK(beta_general(tail21, DamageModel::one_per_shock(), 3) == 0);
  CHECK(beta_general(tail21, DamageModel::one_per_shock(), 9) == 0);
  const auto series3 = tail(sig_of(SignatureKind::tie, {1, 0, 0}));
  CHECK(beta_general(series3, DamageModel::binomial(0.1), 2) == Approx(0.531441).epsilon(1e-14));
  CHECK_THROWS_AS(beta_general(series3, DamageModel::fatal(), 1), ValidationError);
}

TEST_CASE("st signature") {
  const auto series1 = tail(sig_of(SignatureKind::tie, {1}));
  const auto st = st_signature(make_beta_sequence(series1, DamageModel::binomial(0.5), 20));
  REQUIRE(st.probabilities.size() == 20);
  for (std::size_t k = 1; k <= 20; ++k) CHECK(st.probabilities[k - 1] == Approx(std::pow(0.5, double(k))));
  CHECK(st.tail == Approx(std::pow(0.5, 20.0)));

  const auto tail21 = tail(sig_of(SignatureKind::tie, {Rational(6, 13), Rational(7, 13), 0}));
  const auto b = st_signature(make_beta_sequence(tail21, DamageModel::one_per_shock(), 4));
  CHECK(b.probabilities[0] == Approx(6.0 / 13));
  CHECK(b.probabilities[1] == Approx(7.0 / 13));
  CHECK(b.probabilities[2] == 0);
  CHECK(b.probabilities[3] == 0);
  CHECK(b.tail == 0);

  BetaSequence drop;
  drop.values = {1, 0, 0};
  CHECK(st_signature(drop).probabilities == std::vector<double>{1, 0});
  BetaSequence bad;
  bad.values = {1, 0.5, 0.6};
  CHECK_THROWS_AS(st_signature(bad), ValidationError);
}

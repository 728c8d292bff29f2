#include <cmath>
#include <numbers>

#include "doctest.h"
#include "latdiv/analysis.hpp"
#include "latdiv/channel.hpp"

using namespace latdiv;

TEST_CASE("poltyrev outage, n=1 closed form") {
  SimRng rng{404};
  for (double db : {20.0, 25.0, 30.0}) {
    double gamma = db_to_linear(db);
    double ci = 0;
    double est = poltyrev_outage_mc(1, gamma, 1000000, rng, &ci);
    double exact = 1.0 - std::exp(-2.0 * std::numbers::pi * std::numbers::e / gamma);
    CHECK(std::fabs(est - exact) < 3.0 * ci);
  }
}

TEST_CASE("poltyrev outage value at 30 dB") {
  // 1 - e^{-2 pi e / 1000} = 0.016935...
  double exact = 1.0 - std::exp(-2.0 * std::numbers::pi * std::numbers::e / 1000.0);
  CHECK(exact == doctest::Approx(0.01693).epsilon(2e-3));
}

TEST_CASE("poltyrev outage n=2 matches a quadrature oracle") {
  // P(h1^2 h2^2 < t) with unit-exponential h^2: integrate the inner CDF
  // against the outer density on a fine grid.
  SimRng rng{405};
  double gamma = db_to_linear(26.0);
  double t = std::pow(2.0 * std::numbers::pi * std::numbers::e / gamma, 2.0);
  auto inner = [&](double x) { return 1.0 - std::exp(-t / x); };
  double quad = 0, step = 1e-4;
  for (double x = step / 2; x < 40.0; x += step) quad += std::exp(-x) * inner(x) * step;
  double ci = 0;
  double est = poltyrev_outage_mc(2, gamma, 2000000, rng, &ci);
  CHECK(std::fabs(est - quad) < std::max(3.0 * ci, 2e-3 * quad));
}

TEST_CASE("outage vanishes at high SNR and is monotone") {
  SimRng rng{406};
  double prev = 1.0;
  for (double db : {10.0, 16.0, 22.0, 28.0, 34.0}) {
    double p = poltyrev_outage_mc(2, db_to_linear(db), 200000, rng);
    CHECK(p < prev);
    prev = p;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("poltyrev AWGN threshold") {
  double tpe = 2.0 * std::numbers::pi * std::numbers::e;
  CHECK(poltyrev_threshold_awgn(1.0, 4) == doctest::Approx(1.0 / tpe).epsilon(1e-12));
  CHECK(poltyrev_threshold_awgn(1.0, 4) == doctest::Approx(0.05855).epsilon(1e-4));
  CHECK(poltyrev_threshold_awgn(16.0, 4) == doctest::Approx(4.0 / tpe).epsilon(1e-12));
  CHECK(poltyrev_threshold_awgn(2.0, 8) > poltyrev_threshold_awgn(1.0, 8));
}

TEST_CASE("code outage approximation") {
  CHECK(code_outage_approx(0.5, 100.0) == doctest::Approx(0.0088137).epsilon(1e-4));
  // Numerator stays below 4.97 for R <= 0.99.
  CHECK(-std::log(std::pow(2.0, 1.0 - 0.99) - 1.0) < 4.97);
  CHECK(code_outage_approx(0.99, 10.0) < 0.497 + 1e-9);
  CHECK(code_outage_approx(0.5, 1e9) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS(code_outage_approx(1.5, 10.0));
}

TEST_CASE("quadrature validates the high-rate outage approximation") {
  // The log-loss approximation log2(1 + e^{-h^2 gamma}) tracks the exact
  // integral to within 0.1 bit everywhere ...
  for (double h : {0.3, 0.6, 1.0, 1.5}) {
    for (double gamma : {5.0, 10.0, 31.6, 100.0}) {
      double exact = bpsk_fading_logloss_quadrature(h, gamma);
      double approx = std::log2(1.0 + std::exp(-h * h * gamma));
      CHECK(std::fabs(exact - approx) < 0.1);
    }
  }
  // ... and places the rate-1/2 outage threshold within 15%.
  for (double gamma : {10.0, 31.6, 100.0}) {
    auto solve = [&](auto f) {
      double lo = 1e-4, hi = 10.0;
      for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0.5 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    };
    double h_exact = solve([&](double h) { return bpsk_fading_logloss_quadrature(h, gamma); });
    double h_approx = std::sqrt(-std::log(std::pow(2.0, 0.5) - 1.0) / gamma);
    CHECK(h_approx * h_approx == doctest::Approx(h_exact * h_exact).epsilon(0.15));
  }
}

TEST_CASE("chernoff pairwise bound") {
  std::vector<double> x = {2.0, 0.0}, w = {0.0, 0.0};
  CHECK(chernoff_pep_bound(x, w, std::sqrt(0.5)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(chernoff_pep_bound(x, x, 0.1));
  // Doubling all differing coordinates divides the bound by 2^{2l}.
  std::vector<double> x2 = {4.0, 0.0};
  CHECK(chernoff_pep_bound(x2, w, std::sqrt(0.5)) ==
        doctest::Approx(0.25 * chernoff_pep_bound(x, w, std::sqrt(0.5))).epsilon(1e-12));
}

TEST_CASE("diversity slope on exact power laws") {
  FerCurve curve;
  for (double db = 10; db <= 30; db += 2) {
    FerPoint pt;
    pt.gamma_db = db;
    pt.frames = 1000000000;
    pt.frame_errors = llround(3.0 / std::pow(db_to_linear(db), 2.0) * double(pt.frames));
    curve.points.push_back(pt);
  }
  CHECK(diversity_slope(curve, 10, 30) == doctest::Approx(2.0).epsilon(1e-4));

  FerCurve cubic;
  for (double db = 10; db <= 20; db += 2) {
    FerPoint pt;
    pt.gamma_db = db;
    pt.frames = 4000000000000LL;
    pt.frame_errors = llround(5.0 / std::pow(db_to_linear(db), 3.0) * double(pt.frames));
    cubic.points.push_back(pt);
  }
  CHECK(diversity_slope(cubic, 10, 20) == doctest::Approx(3.0).epsilon(1e-3));

  CHECK_THROWS(diversity_slope(curve, 29, 30));  // not enough points
}

TEST_CASE("diversity slope under Poisson resampling stays near truth") {
  SimRng rng{31337};
  RngStream st = rng.stream(0);
  for (int rep = 0; rep < 20; rep++) {
    FerCurve curve;
    for (double db = 12; db <= 24; db += 2) {
      FerPoint pt;
      pt.gamma_db = db;
      double fer = 2.0 / std::pow(db_to_linear(db), 2.0);
      pt.frames = llround(300.0 / fer);
      // Binomial draw via normal approximation at 300 expected errors.
      double mean = fer * double(pt.frames);
      pt.frame_errors = llround(mean + std::sqrt(mean) * st.normal());
      curve.points.push_back(pt);
    }
    double slope = diversity_slope(curve, 12, 24, 100);
    CHECK(slope > 1.7);
    CHECK(slope < 2.3);
  }
}

TEST_CASE("measured POL slope approaches the block count") {
  // Diversity within the MC-reachable window carries a log(SNR) correction;
  // the fitted slope sits below n but clearly separates the orders.
  SimRng rng{505};
  FerCurve n1, n2;
  for (double db : {26.0, 30.0, 34.0, 38.0}) {
    for (int n : {1, 2}) {
      double p = poltyrev_outage_mc(n, db_to_linear(db), 400000, rng);
      FerPoint pt;
      pt.gamma_db = db;
      pt.frames = 400000;
      pt.frame_errors = llround(p * 400000);
      (n == 1 ? n1 : n2).points.push_back(pt);
    }
  }
  double s1 = diversity_slope(n1, 26, 38);
  double s2 = diversity_slope(n2, 26, 38);
  CHECK(s1 == doctest::Approx(1.0).epsilon(0.25));
  CHECK(s2 == doctest::Approx(2.0).epsilon(0.25));
  CHECK(s2 > s1 + 0.5);
}

TEST_CASE("wilson interval behaves at the edges") {
  CHECK(wilson_halfwidth(0, 1000) < 0.005);
  CHECK(wilson_halfwidth(500, 1000) == doctest::Approx(0.030967).epsilon(1e-3));
  CHECK(wilson_halfwidth(0, 0) == 1.0);
}

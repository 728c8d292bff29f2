#include "latdiv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latdiv {

double FerPoint::ci95() const { return wilson_halfwidth(frame_errors, frames); }

double wilson_halfwidth(long long successes, long long trials, double z) {
  if (trials <= 0) return 1.0;
  double n = double(trials), ph = double(successes) / n, z2 = z * z;
  return z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

double poltyrev_outage_mc(int n, double gamma_linear, long long trials, const SimRng& rng,
                          double* ci_halfwidth, int workers) {
  if (n < 1 || trials < 10000) throw std::runtime_error("poltyrev_outage_mc: need n >= 1, trials >= 1e4");
  if (gamma_linear <= 0) throw std::runtime_error("poltyrev_outage_mc: gamma must be positive");
  double log_thresh = n * (std::log(2.0 * std::numbers::pi * std::numbers::e) - std::log(gamma_linear));
  long long hits = 0;
#ifdef _OPENMP
  int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for reduction(+ : hits) schedule(static) num_threads(threads)
#else
  (void)workers;
#endif
  for (long long t = 0; t < trials; t++) {
    RngStream st = rng.stream(uint64_t(t));
    double log_prod = 0;
    for (int i = 0; i < n; i++) {
      double g1 = st.normal(), g2 = st.normal();
      log_prod += std::log((g1 * g1 + g2 * g2) / 2.0);
    }
    if (log_prod < log_thresh) hits++;
  }
  if (ci_halfwidth) *ci_halfwidth = wilson_halfwidth(hits, trials);
  return double(hits) / double(trials);
}

double poltyrev_threshold_awgn(double vol, int dim) {
  if (vol <= 0 || dim < 1) throw std::runtime_error("poltyrev_threshold_awgn: bad arguments");
  return std::pow(vol, 2.0 / dim) / (2.0 * std::numbers::pi * std::numbers::e);
}

double code_outage_approx(double rate, double gamma_linear) {
  if (rate <= 0.0 || rate >= 1.0) throw std::runtime_error("code_outage_approx: rate outside (0,1)");
  if (gamma_linear <= 0) throw std::runtime_error("code_outage_approx: gamma must be positive");
  double v = -std::log(std::pow(2.0, 1.0 - rate) - 1.0) / gamma_linear;
  return std::clamp(v, 0.0, 1.0);
}

namespace {

// Gauss-Hermite nodes/weights by Newton iteration on H_n (physicists'),
// computed once.
struct GaussHermite {
  std::vector<double> x, w;
  explicit GaussHermite(int n) : x(n), w(n) {
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    for (int i = 0; i < (n + 1) / 2; i++) {
      double z;
      switch (i) {
        case 0: z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0); break;
        case 1: z = x[0] - 1.14 * std::pow(n, 0.426) / x[0]; break;
        case 2: z = 1.86 * x[1] - 0.86 * x[0]; break;
        case 3: z = 1.91 * x[2] - 0.91 * x[1]; break;
        default: z = 2.0 * x[i - 1] - x[i - 2];
      }
      double pp = 0;
      for (int it = 0; it < 100; it++) {
        double p1 = pi_quarter, p2 = 0;
        for (int j = 0; j < n; j++) {
          double p3 = p2;
          p2 = p1;
          p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
        }
        pp = std::sqrt(2.0 * n) * p2;
        double dz = p1 / pp;
        z -= dz;
        if (std::fabs(dz) < 1e-14) break;
      }
      x[i] = z;
      x[n - 1 - i] = -z;
      w[i] = 2.0 / (pp * pp);
      w[n - 1 - i] = w[i];
    }
  }
};

}  // namespace

double bpsk_fading_logloss_quadrature(double h, double gamma_linear) {
  static const GaussHermite gh(64);
  // BPSK channel LLR law at gain h: L ~ N(2 h^2 gamma, 4 h^2 gamma).
  double mean = 2.0 * h * h * gamma_linear;
  double spread = std::sqrt(2.0 * 4.0 * h * h * gamma_linear);
  double acc = 0;
  for (size_t i = 0; i < gh.x.size(); i++) {
    double e = -(mean + spread * gh.x[i]);
    double term = e > 30 ? e / std::numbers::ln2 : std::log2(1.0 + std::exp(e));
    acc += gh.w[i] * term;
  }
  return acc / std::sqrt(std::numbers::pi);
}

double chernoff_pep_bound(std::span<const double> x, std::span<const double> w, double sigma) {
  if (x.size() != w.size()) throw std::runtime_error("chernoff_pep_bound: length mismatch");
  int l = 0;
  double log_dp2 = 0;
  for (size_t i = 0; i < x.size(); i++) {
    double d = std::fabs(x[i] - w[i]);
    if (d > 1e-9) {
      l++;
      log_dp2 += 2.0 * std::log(d);
    }
  }
  if (l == 0) throw std::runtime_error("chernoff_pep_bound: points are identical");
  return std::exp(l * std::log(8.0 * sigma * sigma) - std::log(2.0) - log_dp2);
}

double diversity_slope(const FerCurve& curve, double gamma_db_lo, double gamma_db_hi,
                       long long min_errors) {
  std::vector<double> xs, ys;
  for (const auto& pt : curve.points) {
    if (pt.gamma_db < gamma_db_lo || pt.gamma_db > gamma_db_hi) continue;
    if (pt.frame_errors < min_errors || pt.fer() <= 0) continue;
    xs.push_back(pt.gamma_db / 10.0);  // log10 of linear gamma
    ys.push_back(std::log10(pt.fer()));
  }
  if (xs.size() < 3)
    throw std::runtime_error("diversity_slope: fewer than 3 reliable points in the window");
  double n = double(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace latdiv

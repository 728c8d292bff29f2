#pragma once

#include <span>
#include <vector>

#include "latdiv/rng.hpp"

namespace latdiv {

struct FerPoint {
  double gamma_db = 0;
  long long frames = 0;
  long long frame_errors = 0;
  double mean_bp_iters = 0;
  double mean_sd_nodes = 0;

  double fer() const { return frames > 0 ? double(frame_errors) / double(frames) : 0.0; }
  double ci95() const;  // Wilson interval half-width
};

struct FerCurve {
  std::vector<FerPoint> points;
};

double wilson_halfwidth(long long successes, long long trials, double z = 1.959963984540054);

// Monte Carlo estimate of the Poltyrev outage probability
// Pr(prod h_i^2 < (2 pi e / gamma)^n) with E[h^2] = 1 Rayleigh gains.
// Deterministic in (rng.master_seed, stream offset); trials may be farmed
// out to OpenMP workers without changing the estimate.
double poltyrev_outage_mc(int n, double gamma_linear, long long trials, const SimRng& rng,
                          double* ci_halfwidth = nullptr, int workers = 0);

// sigma_max^2 = vol^{2/dim} / (2 pi e).
double poltyrev_threshold_awgn(double vol, int dim);

// High-rate outage approximation -ln(2^{1-R} - 1) / gamma, clamped to [0,1].
double code_outage_approx(double rate, double gamma_linear);

// Exact instantaneous log-loss E[log2(1 + e^{-L})] of BPSK at gain h,
// L ~ N(2 h^2 gamma, 4 h^2 gamma), via 64-point Gauss-Hermite quadrature.
// Validation companion of code_outage_approx's closed form.
double bpsk_fading_logloss_quadrature(double h, double gamma_linear);

// Chernoff pairwise bound (8 sigma^2)^l / (2 d_p^2) over the l differing
// coordinates.
double chernoff_pep_bound(std::span<const double> x, std::span<const double> w, double sigma);

// Negated least-squares slope of log10(FER) against log10(gamma) over the
// points whose gamma_db lies in [gamma_db_lo, gamma_db_hi]; requires at
// least three points with frame_errors >= min_errors.
double diversity_slope(const FerCurve& curve, double gamma_db_lo, double gamma_db_hi,
                       long long min_errors = 20);

}  // namespace latdiv

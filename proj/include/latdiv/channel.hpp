#pragma once

#include <span>
#include <vector>

#include "latdiv/rng.hpp"

namespace latdiv {

// One frame's fading gains, constant per block. Sampled so that E[h^2] = 1.
struct FadingRealization {
  std::vector<double> h;
  int blocks() const { return int(h.size()); }
};

struct ChannelOutput {
  std::vector<double> y;
  FadingRealization fading;
  double sigma = 0;
};

FadingRealization sample_fading(int n, RngStream& rng);

// y_i = h_{i mod n} * x_i + N(0, sigma^2) noise, blocks of n coordinates.
std::vector<double> transmit(std::span<const double> x, const FadingRealization& fading, double sigma,
                             RngStream& rng);

double db_to_linear(double db);
double linear_to_db(double v);

// sigma from the infinite-constellation SNR definition gamma = vol^{2/dim} / sigma^2.
double sigma_from_snr(double vol, int dim, double gamma_linear);
double sigma_from_snr_log(double log_vol, int dim, double gamma_linear);

std::vector<double> bpsk_translate(std::span<const double> x);    // 2x - 1
std::vector<double> bpsk_untranslate(std::span<const double> x);  // (x + 1) / 2

}  // namespace latdiv

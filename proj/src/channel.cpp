#include "latdiv/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace latdiv {

FadingRealization sample_fading(int n, RngStream& rng) {
  FadingRealization out;
  out.h.resize(n);
  for (int i = 0; i < n; i++) {
    double g1 = rng.normal(), g2 = rng.normal();
    out.h[i] = std::sqrt((g1 * g1 + g2 * g2) / 2.0);
  }
  return out;
}

std::vector<double> transmit(std::span<const double> x, const FadingRealization& fading, double sigma,
                             RngStream& rng) {
  int n = fading.blocks();
  if (n < 1 || int(x.size()) % n != 0) throw std::runtime_error("transmit: frame length mismatch");
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); i++) y[i] = fading.h[i % n] * x[i] + sigma * rng.normal();
  return y;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

double sigma_from_snr(double vol, int dim, double gamma_linear) {
  return sigma_from_snr_log(std::log(vol), dim, gamma_linear);
}

double sigma_from_snr_log(double log_vol, int dim, double gamma_linear) {
  if (gamma_linear <= 0) throw std::runtime_error("sigma_from_snr: gamma must be positive");
  return std::exp(log_vol / dim) / std::sqrt(gamma_linear);
}

std::vector<double> bpsk_translate(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); i++) out[i] = 2.0 * x[i] - 1.0;
  return out;
}

std::vector<double> bpsk_untranslate(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); i++) out[i] = (x[i] + 1.0) / 2.0;
  return out;
}

}  // namespace latdiv

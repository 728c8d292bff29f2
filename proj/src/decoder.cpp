#include "latdiv/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latdiv {

namespace {

Mat faded_basis(const Mat& ideal_basis, const FadingRealization& fading, double scale) {
  int n = ideal_basis.rows();
  Mat b(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) b(i, j) = scale * ideal_basis(i, j) * fading.h[j];
  return b;
}

int argmax_gain(const FadingRealization& fading) {
  int best = 0;
  for (int i = 1; i < fading.blocks(); i++)
    if (fading.h[i] > fading.h[best]) best = i;  // ties keep the smallest index
  return best;
}

}  // namespace

BlockMlResult low_dim_ml(std::span<const double> y_translated, const Mat& ideal_basis,
                         const FadingRealization& fading) {
  int n = fading.blocks();
  if (ideal_basis.rows() != n || int(y_translated.size()) % n != 0)
    throw std::runtime_error("low_dim_ml: dimension mismatch");
  int blocks = int(y_translated.size()) / n;
  SphereDecoder sd(LatticeBasis(faded_basis(ideal_basis, fading, 2.0)));
  int im = argmax_gain(fading);

  BlockMlResult out;
  out.y_hat.resize(blocks);
  out.z_hat.resize(size_t(blocks) * n);
  std::vector<double> plus(n), minus(n);
  for (int b = 0; b < blocks; b++) {
    std::span<const double> yb = y_translated.subspan(size_t(b) * n, n);
    for (int i = 0; i < n; i++) {
      plus[i] = yb[i] - fading.h[i];
      minus[i] = yb[i] + fading.h[i];
    }
    CvpResult rp = sd.solve(plus);
    CvpResult rm = sd.solve(minus);
    out.sd_nodes += rp.nodes_visited + rm.nodes_visited;
    const CvpResult& win = (rp.sq_dist <= rm.sq_dist) ? rp : rm;
    out.residual_sq += win.sq_dist;
    for (int i = 0; i < n; i++) out.z_hat[size_t(b) * n + i] = win.z[i];
    // Unfaded ideal coordinates of the block estimate at the strongest gain.
    double p_im = 0;
    for (int r = 0; r < n; r++) p_im += double(win.z[r]) * ideal_basis(r, im);
    out.y_hat[b] = yb[im] - 2.0 * fading.h[im] * p_im;
  }
  return out;
}

DecodeResult iterative_decode(const ConstructionALattice& lat, std::span<const double> y_translated,
                              const FadingRealization& fading, double sigma, int bp_max_iter) {
  if (lat.code().p != 2) throw std::runtime_error("iterative_decode: binary underlying codes only");
  if (int(y_translated.size()) != lat.dim()) throw std::runtime_error("iterative_decode: frame length");
  BlockMlResult ml = low_dim_ml(y_translated, lat.ideal_basis(), fading);

  double hmax = fading.h[argmax_gain(fading)];
  std::vector<double> llr(ml.y_hat.size());
  for (size_t i = 0; i < llr.size(); i++) {
    if (sigma > 0)
      llr[i] = 2.0 * hmax * ml.y_hat[i] / (sigma * sigma);
    else
      llr[i] = (ml.y_hat[i] > 0 ? 1.0 : (ml.y_hat[i] < 0 ? -1.0 : 0.0)) * 30.0;
  }
  BpResult bp = sum_product_decode(lat.tanner(), llr, bp_max_iter);

  DecodeResult res;
  res.c_hat = bp.bits;
  res.z_hat = std::move(ml.z_hat);
  res.converged = bp.converged;
  res.bp_iterations = bp.iterations;
  res.sd_nodes = ml.sd_nodes;
  res.residual_sq = ml.residual_sq;
  res.x_hat = reconstruct(lat, res.c_hat, res.z_hat, false, &res.codeword_ok);
  return res;
}

DecodeResult coset_decode(const ConstructionALattice& lat, std::span<const double> y,
                          const FadingRealization& fading) {
  if (int(y.size()) != lat.dim()) throw std::runtime_error("coset_decode: frame length");
  int n = lat.field().degree, N = lat.code().N, p = lat.code().p;
  SphereDecoder sd(LatticeBasis(faded_basis(lat.ideal_basis(), fading, 1.0)));

  DecodeResult res;
  res.c_hat.assign(N, 0);
  res.z_hat.assign(size_t(N) * n, 0);
  std::vector<double> shifted(n);
  for (int b = 0; b < N; b++) {
    std::span<const double> yb = y.subspan(size_t(b) * n, n);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p; j++) {
      for (int i = 0; i < n; i++) shifted[i] = yb[i] - double(j) * fading.h[i];
      CvpResult r = sd.solve(shifted);
      res.sd_nodes += r.nodes_visited;
      if (r.sq_dist < best) {  // strict: the smallest symbol wins ties
        best = r.sq_dist;
        res.c_hat[b] = j;
        for (int i = 0; i < n; i++) res.z_hat[size_t(b) * n + i] = r.z[i];
      }
    }
    res.residual_sq += best;
  }
  res.x_hat = reconstruct(lat, res.c_hat, res.z_hat, false, &res.codeword_ok);
  return res;
}

std::vector<double> reconstruct(const ConstructionALattice& lat, std::span<const int> c_hat,
                                std::span<const long long> z_hat, bool translated, bool* codeword_ok) {
  int n = lat.field().degree, N = lat.code().N;
  if (int(c_hat.size()) != N || int(z_hat.size()) != lat.dim())
    throw std::runtime_error("reconstruct: dimension mismatch");
  if (codeword_ok) {
    *codeword_ok = true;
    for (int v : syndrome(lat.code(), c_hat))
      if (v != 0) *codeword_ok = false;
  }
  const Mat& pb = lat.ideal_basis();
  std::vector<double> x(lat.dim());
  for (int b = 0; b < N; b++)
    for (int i = 0; i < n; i++) {
      double v = double(c_hat[b]);
      for (int r = 0; r < n; r++) v += double(z_hat[size_t(b) * n + r]) * pb(r, i);
      x[size_t(b) * n + i] = translated ? 2.0 * v - 1.0 : v;
    }
  return x;
}

}  // namespace latdiv

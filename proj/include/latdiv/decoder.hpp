#pragma once

#include <span>
#include <vector>

#include "latdiv/channel.hpp"
#include "latdiv/cvp.hpp"
#include "latdiv/lattice.hpp"

namespace latdiv {

struct DecodeResult {
  std::vector<int> c_hat;          // length N
  std::vector<long long> z_hat;    // length nN, per-block ideal coordinates
  std::vector<double> x_hat;       // length nN, untranslated point
  bool converged = true;           // BP flag (iterative decoder only)
  bool codeword_ok = true;         // syndrome(c_hat) == 0
  double residual_sq = 0;          // sum of per-block channel-metric residuals
  long long sd_nodes = 0;
  int bp_iterations = 0;
};

struct BlockMlResult {
  std::vector<double> y_hat;       // length N, max-gain coordinate residue per block
  std::vector<long long> z_hat;    // length nN
  double residual_sq = 0;
  long long sd_nodes = 0;
};

// Per-block two-hypothesis ML on the translated channel: decode each block
// against the faded ideal basis scaled by 2 with the symbol offset removed,
// keep the hypothesis with the smaller residual, then read the surviving
// symbol information off the strongest fading coordinate.
BlockMlResult low_dim_ml(std::span<const double> y_translated, const Mat& ideal_basis,
                         const FadingRealization& fading);

// Per-block ML plus LLR-fed sum-product decoding of the binary underlying
// code; y is the output of the translated (2x-1) transmission.
DecodeResult iterative_decode(const ConstructionALattice& lat, std::span<const double> y_translated,
                              const FadingRealization& fading, double sigma, int bp_max_iter = 50);

// Non-iterative decoder: per block, try all p symbol hypotheses, sphere
// decode the remainder against the faded ideal basis, keep the pair with
// the smallest residual. Works for any alphabet.
DecodeResult coset_decode(const ConstructionALattice& lat, std::span<const double> y,
                          const FadingRealization& fading);

// x from (c, z); the translated flavor returns 2x - 1. Flags (but still
// reconstructs) when c is not a codeword.
std::vector<double> reconstruct(const ConstructionALattice& lat, std::span<const int> c_hat,
                                std::span<const long long> z_hat, bool translated,
                                bool* codeword_ok = nullptr);

}  // namespace latdiv

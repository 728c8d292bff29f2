#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latdiv {

// p-ary [N,k] linear code defined by a parity-check matrix H. The systematic
// generator [I_k | A] lives in a permuted coordinate order; `perm` maps
// systematic position -> original column, with identity-like H mapping to
// itself (pivots are searched right to left).
struct LinearCode {
  int p = 2, N = 0, k = 0;
  std::vector<int> h;     // (N-k) x N over F_p, original coordinates
  std::vector<int> a;     // k x (N-k), systematic part
  std::vector<int> perm;  // length N

  int h_at(int r, int c) const { return h[size_t(r) * N + c]; }
  int a_at(int r, int c) const { return a[size_t(r) * (N - k) + c]; }
  double rate() const { return double(k) / N; }
};

enum class CodeFormat { alist, dense_text };

// Build a code from a parity-check matrix; computes the systematic form and
// throws on rank-deficient H.
LinearCode code_from_parity(int p, int rows, int cols, std::vector<int> h);

LinearCode load_code(const std::string& path, CodeFormat format);

// Sparse random parity-check with balanced column/row weights (binary codes
// get 0/1 entries, p-ary codes random nonzero entries). Retries until H has
// full rank; deterministic in the seed.
LinearCode random_regular_code(int p, int N, int k, int col_weight, uint64_t seed);

std::vector<int> encode(const LinearCode& code, std::span<const int> msg);
std::vector<int> syndrome(const LinearCode& code, std::span<const int> word);

// H tensor I_n, the lattice-level parity check; row-major n(N-k) x nN.
std::vector<int> expand_parity(const LinearCode& code, int n);

struct TannerGraph {
  int n_vars = 0, n_checks = 0, n_edges = 0;
  std::vector<std::vector<int>> check_edges;  // edge ids per check
  std::vector<std::vector<int>> var_edges;    // edge ids per variable
  std::vector<int> edge_var;                  // edge id -> variable
  std::vector<int> edge_check;                // edge id -> check

  explicit TannerGraph(const LinearCode& code);  // binary codes only
};

struct BpResult {
  std::vector<int> bits;
  bool converged = false;
  int iterations = 0;
};

// Flooding-schedule sum-product decoding. LLR sign convention: positive
// favors symbol +1 (bit 1). Inputs are clipped to +-30; ties in the hard
// decision resolve to bit 0. Convergence requires a zero syndrome reached
// with every posterior strictly signed. `early_exit = false` runs all
// iterations regardless, exposing the message-passing fixed point (exact
// bitwise MAP on cycle-free graphs).
BpResult sum_product_decode(const TannerGraph& graph, std::span<const double> llr, int max_iter = 50,
                            bool early_exit = true);

}  // namespace latdiv

#include "latdiv/linearcode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "latdiv/rng.hpp"

namespace latdiv {

namespace {

int mod_inverse(int a, int p) {
  // p is a small prime.
  int t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    int q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  return ((t % p) + p) % p;
}

}  // namespace

LinearCode code_from_parity(int p, int rows, int cols, std::vector<int> h) {
  if (rows <= 0 || cols <= rows) throw std::runtime_error("parity-check: inconsistent dimensions");
  if (int(h.size()) != rows * cols) throw std::runtime_error("parity-check: inconsistent dimensions");
  for (int& v : h) {
    v %= p;
    if (v < 0) v += p;
  }
  LinearCode code;
  code.p = p;
  code.N = cols;
  code.k = cols - rows;
  code.h = h;

  // Reduced row echelon form with pivots preferred in the rightmost columns,
  // so an already-systematic [B | I] parity check keeps its coordinates.
  std::vector<int> red = h;
  auto at = [&](int r, int c) -> int& { return red[size_t(r) * cols + c]; };
  std::vector<int> pivot_cols;
  int rank = 0;
  for (int col = cols - 1; col >= 0 && rank < rows; col--) {
    int piv = -1;
    for (int r = rank; r < rows; r++)
      if (at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < cols; c++) std::swap(red[size_t(rank) * cols + c], red[size_t(piv) * cols + c]);
    int inv = mod_inverse(at(rank, col), p);
    for (int c = 0; c < cols; c++) at(rank, c) = int((long long)at(rank, c) * inv % p);
    for (int r = 0; r < rows; r++) {
      if (r == rank || at(r, col) == 0) continue;
      long long f = at(r, col);
      for (int c = 0; c < cols; c++)
        at(r, c) = int((((at(r, c) - f * at(rank, c)) % p) + p) % p);
    }
    pivot_cols.push_back(col);
    rank++;
  }
  if (rank != rows) throw std::runtime_error("parity-check matrix is rank-deficient");

  std::sort(pivot_cols.begin(), pivot_cols.end());
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  std::vector<int> msg_cols;
  for (int c = 0; c < cols; c++)
    if (!is_pivot[c]) msg_cols.push_back(c);

  code.perm = msg_cols;
  code.perm.insert(code.perm.end(), pivot_cols.begin(), pivot_cols.end());

  // For a codeword, H_red restricted to pivots is I (up to row order), so
  // pivot symbols equal -sum over message symbols. Locate the row owning
  // each pivot column.
  std::vector<int> row_of_pivot(rows, -1);
  for (int j = 0; j < rows; j++) {
    int col = pivot_cols[j];
    for (int r = 0; r < rows; r++)
      if (at(r, col) != 0) {
        row_of_pivot[j] = r;
        break;
      }
  }
  code.a.assign(size_t(code.k) * rows, 0);
  for (int i = 0; i < code.k; i++)
    for (int j = 0; j < rows; j++) {
      int v = at(row_of_pivot[j], msg_cols[i]);
      code.a[size_t(i) * rows + j] = (p - v) % p;
    }

  // Sanity: G H^t = 0.
  for (int i = 0; i < code.k; i++) {
    std::vector<int> msg(code.k, 0);
    msg[i] = 1;
    auto word = encode(code, msg);
    for (int s : syndrome(code, word))
      if (s != 0) throw std::runtime_error("parity-check: systematic form inconsistent");
  }
  return code;
}

std::vector<int> encode(const LinearCode& code, std::span<const int> msg) {
  if (int(msg.size()) != code.k) throw std::runtime_error("encode: message length mismatch");
  for (int m : msg)
    if (m < 0 || m >= code.p) throw std::runtime_error("encode: symbol out of range");
  std::vector<int> word(code.N, 0);
  for (int i = 0; i < code.k; i++) word[code.perm[i]] = msg[i];
  int r = code.N - code.k;
  for (int j = 0; j < r; j++) {
    long long s = 0;
    for (int i = 0; i < code.k; i++) s += (long long)msg[i] * code.a_at(i, j);
    word[code.perm[code.k + j]] = int(s % code.p);
  }
  return word;
}

std::vector<int> syndrome(const LinearCode& code, std::span<const int> word) {
  if (int(word.size()) != code.N) throw std::runtime_error("syndrome: word length mismatch");
  int rows = code.N - code.k;
  std::vector<int> out(rows, 0);
  for (int r = 0; r < rows; r++) {
    long long s = 0;
    for (int c = 0; c < code.N; c++) s += (long long)code.h_at(r, c) * word[c];
    out[r] = int(((s % code.p) + code.p) % code.p);
  }
  return out;
}

std::vector<int> expand_parity(const LinearCode& code, int n) {
  int rows = code.N - code.k;
  std::vector<int> out(size_t(rows) * n * code.N * n, 0);
  size_t width = size_t(code.N) * n;
  for (int r = 0; r < rows; r++)
    for (int c = 0; c < code.N; c++) {
      int v = code.h_at(r, c);
      if (v == 0) continue;
      for (int i = 0; i < n; i++) out[(size_t(r) * n + i) * width + size_t(c) * n + i] = v;
    }
  return out;
}

LinearCode load_code(const std::string& path, CodeFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file " + path);
  std::vector<long long> tok;
  long long v;
  if (format == CodeFormat::dense_text) {
    while (in >> v) tok.push_back(v);
    if (tok.size() < 3) throw std::runtime_error("dense code file too short: " + path);
    int p = int(tok[0]), N = int(tok[1]), k = int(tok[2]);
    if (p < 2 || N <= 0 || k <= 0 || k >= N)
      throw std::runtime_error("dense code header inconsistent: " + path);
    size_t need = size_t(N - k) * N;
    if (tok.size() != 3 + need) throw std::runtime_error("dense code body size mismatch: " + path);
    std::vector<int> h(need);
    for (size_t i = 0; i < need; i++) h[i] = int(tok[3 + i]);
    return code_from_parity(p, N - k, N, std::move(h));
  }
  // MacKay alist. Accepts both zero-padded and unpadded adjacency blocks.
  while (in >> v) tok.push_back(v);
  size_t pos = 0;
  auto next = [&]() {
    if (pos >= tok.size()) throw std::runtime_error("alist file truncated: " + path);
    return tok[pos++];
  };
  int N = int(next()), M = int(next());
  if (N <= 0 || M <= 0 || M >= N) throw std::runtime_error("alist dimensions inconsistent: " + path);
  int cmax = int(next()), rmax = int(next());
  std::vector<int> col_deg(N), row_deg(M);
  for (int i = 0; i < N; i++) col_deg[i] = int(next());
  for (int i = 0; i < M; i++) row_deg[i] = int(next());
  long long deg_sum = 0;
  for (int d : col_deg) deg_sum += d;
  size_t remaining = tok.size() - pos;
  bool padded = remaining == size_t(cmax) * N + size_t(rmax) * M;
  if (!padded && remaining != 2 * size_t(deg_sum))
    throw std::runtime_error("alist adjacency block size mismatch: " + path);
  std::vector<int> h(size_t(M) * N, 0);
  for (int c = 0; c < N; c++) {
    int entries = padded ? cmax : col_deg[c];
    for (int e = 0; e < entries; e++) {
      long long row = next();
      if (row == 0) continue;  // padding
      if (row < 1 || row > M) throw std::runtime_error("alist row index out of range: " + path);
      h[size_t(row - 1) * N + c] = 1;
    }
  }
  // The per-row block is redundant; consume it.
  for (int r = 0; r < M; r++) {
    int entries = padded ? rmax : row_deg[r];
    for (int e = 0; e < entries; e++) next();
  }
  return code_from_parity(2, M, N, std::move(h));
}

LinearCode random_regular_code(int p, int N, int k, int col_weight, uint64_t seed) {
  if (col_weight < 2 || col_weight > N - k)
    throw std::runtime_error("random_regular_code: column weight out of range");
  int rows = N - k;
  for (int attempt = 0; attempt < 200; attempt++) {
    RngStream rng(seed, 0xC0DEull + attempt);
    // Balanced assignment: a shuffled pool of row slots, col_weight per column.
    std::vector<int> pool;
    long long slots = (long long)N * col_weight;
    for (long long i = 0; i < slots; i++) pool.push_back(int(i % rows));
    for (size_t i = pool.size(); i > 1; i--) std::swap(pool[i - 1], pool[rng.uniform_int(0, i - 1)]);
    std::vector<int> h(size_t(rows) * N, 0);
    size_t cursor = 0;
    bool ok = true;
    for (int c = 0; c < N && ok; c++) {
      std::vector<int> chosen;
      for (int w = 0; w < col_weight; w++) {
        // Find a pool entry not already used by this column.
        bool found = false;
        for (size_t probe = cursor; probe < pool.size(); probe++) {
          int r = pool[probe];
          if (std::find(chosen.begin(), chosen.end(), r) == chosen.end()) {
            std::swap(pool[cursor], pool[probe]);
            chosen.push_back(r);
            cursor++;
            found = true;
            break;
          }
        }
        if (!found) {
          ok = false;
          break;
        }
      }
      for (int r : chosen) {
        int val = (p == 2) ? 1 : int(rng.uniform_int(1, p - 1));
        h[size_t(r) * N + c] = val;
      }
    }
    if (!ok) continue;
    try {
      return code_from_parity(p, rows, N, std::move(h));
    } catch (const std::runtime_error&) {
      continue;  // rank-deficient draw, retry
    }
  }
  throw std::runtime_error("random_regular_code: failed to draw a full-rank parity check");
}

TannerGraph::TannerGraph(const LinearCode& code) {
  if (code.p != 2) throw std::runtime_error("TannerGraph: binary codes only");
  n_vars = code.N;
  n_checks = code.N - code.k;
  check_edges.resize(n_checks);
  var_edges.resize(n_vars);
  for (int r = 0; r < n_checks; r++)
    for (int c = 0; c < n_vars; c++)
      if (code.h_at(r, c)) {
        check_edges[r].push_back(n_edges);
        var_edges[c].push_back(n_edges);
        edge_var.push_back(c);
        edge_check.push_back(r);
        n_edges++;
      }
}

BpResult sum_product_decode(const TannerGraph& graph, std::span<const double> llr, int max_iter,
                            bool early_exit) {
  if (int(llr.size()) != graph.n_vars) throw std::runtime_error("sum_product_decode: llr length");
  if (max_iter < 1) throw std::runtime_error("sum_product_decode: max_iter must be >= 1");
  constexpr double kClip = 30.0;
  // Work internally in the bit0 <-> +1 domain where the tanh product rule
  // encodes even parity directly; the public convention (positive favors
  // bit 1) is the negation.
  std::vector<double> channel(graph.n_vars);
  for (int v = 0; v < graph.n_vars; v++) channel[v] = -std::clamp(llr[v], -kClip, kClip);

  std::vector<double> v2c(graph.n_edges), c2v(graph.n_edges, 0.0);
  for (int e = 0; e < graph.n_edges; e++) v2c[e] = channel[graph.edge_var[e]];

  std::vector<double> posterior(graph.n_vars);
  BpResult res;
  res.bits.assign(graph.n_vars, 0);

  auto hard_decide = [&]() {
    for (int v = 0; v < graph.n_vars; v++) res.bits[v] = posterior[v] < 0.0 ? 1 : 0;
  };
  auto syndrome_ok = [&]() {
    for (int c = 0; c < graph.n_checks; c++) {
      int parity = 0;
      for (int e : graph.check_edges[c]) parity ^= res.bits[graph.edge_var[e]];
      if (parity) return false;
    }
    return true;
  };

  for (int iter = 1; iter <= max_iter; iter++) {
    res.iterations = iter;
    // Check update, tanh rule with leave-one-out prefix/suffix products.
    for (int c = 0; c < graph.n_checks; c++) {
      const auto& edges = graph.check_edges[c];
      size_t deg = edges.size();
      static thread_local std::vector<double> t, pre, suf;
      t.resize(deg);
      pre.resize(deg + 1);
      suf.resize(deg + 1);
      for (size_t i = 0; i < deg; i++) t[i] = std::tanh(0.5 * v2c[edges[i]]);
      pre[0] = 1.0;
      for (size_t i = 0; i < deg; i++) pre[i + 1] = pre[i] * t[i];
      suf[deg] = 1.0;
      for (size_t i = deg; i-- > 0;) suf[i] = suf[i + 1] * t[i];
      for (size_t i = 0; i < deg; i++) {
        double prod = std::clamp(pre[i] * suf[i + 1], -0.9999999999999, 0.9999999999999);
        c2v[edges[i]] = 2.0 * std::atanh(prod);
      }
    }
    // Variable update and posterior.
    for (int v = 0; v < graph.n_vars; v++) {
      double total = channel[v];
      for (int e : graph.var_edges[v]) total += c2v[e];
      posterior[v] = total;
      for (int e : graph.var_edges[v]) v2c[e] = std::clamp(total - c2v[e], -kClip, kClip);
    }
    hard_decide();
    if (syndrome_ok()) {
      bool informative = true;
      for (int v = 0; v < graph.n_vars; v++)
        if (posterior[v] == 0.0) informative = false;
      if (informative) {
        res.converged = true;
        if (early_exit) return res;
      }
    }
  }
  hard_decide();
  res.converged = res.converged && syndrome_ok();
  return res;
}

}  // namespace latdiv

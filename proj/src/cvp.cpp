#include "latdiv/cvp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latdiv {

namespace {

constexpr double kDegenerateRatio = 1e-9;
constexpr int kDegenerateBox = 64;
constexpr long long kNodeCap = 50'000'000;

// Distance ties (relative 1e-9) break to the lexicographically smallest
// coefficient vector; both solvers share this predicate.
bool better(double d, std::span<const long long> z, double best_d, std::span<const long long> best_z) {
  double eps = 1e-9 * std::min(std::fabs(d), std::fabs(best_d));
  if (d < best_d - eps) return true;
  if (d > best_d + eps) return false;
  return std::lexicographical_compare(z.begin(), z.end(), best_z.begin(), best_z.end());
}

struct EnumBest {
  bool found = false;
  double dist = std::numeric_limits<double>::infinity();
  std::vector<long long> z;
};

// Schnorr-Euchner depth-first enumeration of min ||ytilde - R z||^2 + base,
// R upper triangular with positive diagonal. Keeps equal-distance leaves
// alive so the tie rule can decide.
void se_enumerate(const Mat& r_mat, std::span<const double> ytilde, double base, EnumBest& best,
                  long long& nodes) {
  int r = r_mat.rows();
  if (r == 0) {
    nodes++;
    std::vector<long long> empty;
    if (!best.found || better(base, empty, best.dist, best.z)) {
      best.found = true;
      best.dist = base;
      best.z.clear();
    }
    return;
  }
  std::vector<long long> z(r, 0), delta(r, 1);
  std::vector<double> csum(r, 0.0), dist_above(r, 0.0);
  auto descend = [&](int i) {
    double s = 0;
    for (int j = i + 1; j < r; j++) s += r_mat(i, j) * double(z[j]);
    csum[i] = s;
    double center = (ytilde[i] - s) / r_mat(i, i);
    z[i] = llround(center);
    delta[i] = (center >= double(z[i])) ? 1 : -1;
  };
  auto advance = [&](int i) {
    z[i] += delta[i];
    delta[i] = -delta[i] - (delta[i] > 0 ? 1 : -1);
  };
  int i = r - 1;
  dist_above[i] = 0.0;
  descend(i);
  for (;;) {
    if (++nodes > kNodeCap) throw std::runtime_error("sphere_decode: enumeration node cap exceeded");
    double t = ytilde[i] - csum[i] - r_mat(i, i) * double(z[i]);
    double d = dist_above[i] + t * t;
    bool prune = best.found && (base + d > best.dist * (1.0 + 1e-9));
    if (!prune) {
      if (i == 0) {
        double total = base + d;
        if (!best.found || better(total, z, best.dist, best.z)) {
          best.found = true;
          best.dist = total;
          best.z = z;
        }
        advance(0);
      } else {
        dist_above[i - 1] = d;
        descend(--i);
      }
    } else {
      if (++i == r) break;
      advance(i);
    }
  }
}

}  // namespace

LatticeBasis::LatticeBasis(Mat generators) : b_(std::move(generators)) {
  if (b_.rows() < 1 || b_.rows() > b_.cols())
    throw std::runtime_error("LatticeBasis: need 1 <= rank <= dimension generator rows");
  gram_ = matmul(b_, transpose(b_));
  // Full-rank gate: |det B| must clear 1e-12 * ||B||^m (row-norm scale).
  double max_norm = 0;
  for (int i = 0; i < b_.rows(); i++) max_norm = std::max(max_norm, std::sqrt(sq_norm(b_.row(i))));
  Qr qr = qr_decompose(transpose(b_));
  double log_det = 0;
  for (int i = 0; i < qr.r.rows(); i++) log_det += std::log(std::max(qr.r(i, i), 1e-300));
  double log_thresh = std::log(1e-12) + b_.rows() * std::log(std::max(max_norm, 1e-300));
  if (!(log_det > log_thresh)) throw std::runtime_error("LatticeBasis: rank-deficient generators");
}

SphereDecoder::SphereDecoder(LatticeBasis basis) : basis_(std::move(basis)) {
  const Mat& b = basis_.rows();
  double max_norm = 0;
  std::vector<double> norms(b.rows());
  for (int i = 0; i < b.rows(); i++) {
    norms[i] = std::sqrt(sq_norm(b.row(i)));
    max_norm = std::max(max_norm, norms[i]);
  }
  for (int i = 0; i < b.rows(); i++) {
    if (norms[i] < kDegenerateRatio * max_norm)
      degenerate_.push_back(i);
    else
      healthy_.push_back(i);
  }
  if (!healthy_.empty()) {
    Mat cols(b.cols(), int(healthy_.size()));
    for (size_t j = 0; j < healthy_.size(); j++)
      for (int i = 0; i < b.cols(); i++) cols(i, int(j)) = b(healthy_[j], i);
    Qr qr = qr_decompose(cols);
    q_ = std::move(qr.q);
    r_ = std::move(qr.r);
  }
}

CvpResult SphereDecoder::solve(std::span<const double> y) const {
  const Mat& b = basis_.rows();
  int m = b.cols(), rank = b.rows();
  if (int(y.size()) != m) throw std::runtime_error("sphere_decode: target dimension mismatch");
  int nh = int(healthy_.size()), nd = int(degenerate_.size());
  if (nd > 3) throw std::runtime_error("sphere_decode: too many degenerate directions");

  long long nodes = 0;
  EnumBest global;
  std::vector<long long> zdeg(nd, -kDegenerateBox);
  std::vector<long long> full(rank, 0);
  for (;;) {
    // Target with the degenerate contribution removed.
    std::vector<double> yp(y.begin(), y.end());
    for (int j = 0; j < nd; j++)
      for (int c = 0; c < m; c++) yp[c] -= double(zdeg[j]) * b(degenerate_[j], c);
    EnumBest local;
    if (nh > 0) {
      std::vector<double> ytilde(nh, 0.0);
      for (int j = 0; j < nh; j++)
        for (int i = 0; i < m; i++) ytilde[j] += q_(i, j) * yp[i];
      double base = sq_norm(yp) - sq_norm(ytilde);
      if (base < 0) base = 0;
      se_enumerate(r_, ytilde, base, local, nodes);
    } else {
      nodes++;
      local.found = true;
      local.dist = sq_norm(yp);
    }
    for (int j = 0; j < nh; j++) full[healthy_[j]] = j < int(local.z.size()) ? local.z[j] : 0;
    for (int j = 0; j < nd; j++) full[degenerate_[j]] = zdeg[j];
    if (!global.found || better(local.dist, full, global.dist, global.z)) {
      global.found = true;
      global.dist = local.dist;
      global.z = full;
    }
    // Odometer over the degenerate box.
    int pos = nd - 1;
    while (pos >= 0 && zdeg[pos] == kDegenerateBox) zdeg[pos--] = -kDegenerateBox;
    if (pos < 0) break;
    zdeg[pos]++;
  }

  CvpResult res;
  res.z = std::move(global.z);
  std::vector<double> zd(res.z.size());
  for (size_t i = 0; i < zd.size(); i++) zd[i] = double(res.z[i]);
  res.point = row_times(zd, b);
  double d = 0;
  for (int i = 0; i < m; i++) {
    double t = y[i] - res.point[i];
    d += t * t;
  }
  res.sq_dist = d;
  res.nodes_visited = nodes;
  return res;
}

CvpResult sphere_decode(const LatticeBasis& basis, std::span<const double> y) {
  return SphereDecoder(basis).solve(y);
}

CvpResult brute_force_cvp(const LatticeBasis& basis, std::span<const double> y, int box) {
  const Mat& b = basis.rows();
  int m = b.cols(), rank = b.rows();
  if (int(y.size()) != m) throw std::runtime_error("brute_force_cvp: target dimension mismatch");
  if (box < 0) throw std::runtime_error("brute_force_cvp: negative box");
  double combos = std::pow(2.0 * box + 1.0, rank);
  if (combos > 1e8) throw std::runtime_error("brute_force_cvp: box too large");

  std::vector<std::vector<double>> acc(rank + 1, std::vector<double>(m));
  for (int i = 0; i < m; i++) acc[0][i] = y[i];
  std::vector<long long> z(rank, 0);
  EnumBest best;
  long long nodes = 0;

  // Lexicographically ascending nested loops; ties keep the first hit.
  auto rec = [&](auto&& self, int level) -> void {
    if (level == rank) {
      nodes++;
      double d = sq_norm(acc[rank]);
      if (!best.found || better(d, z, best.dist, best.z)) {
        best.found = true;
        best.dist = d;
        best.z = z;
      }
      return;
    }
    for (long long v = -box; v <= box; v++) {
      z[level] = v;
      for (int i = 0; i < m; i++) acc[level + 1][i] = acc[level][i] - double(v) * b(level, i);
      self(self, level + 1);
    }
  };
  rec(rec, 0);

  CvpResult res;
  res.z = std::move(best.z);
  std::vector<double> zd(res.z.size());
  for (size_t i = 0; i < zd.size(); i++) zd[i] = double(res.z[i]);
  res.point = row_times(zd, b);
  res.sq_dist = best.dist;
  res.nodes_visited = nodes;
  return res;
}

}  // namespace latdiv

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "latdiv/linearcode.hpp"
#include "latdiv/rng.hpp"

using namespace latdiv;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

// Exact bitwise MAP for the LLR convention used by the decoder: positive
// favors bit 1 (symbol +1).
std::vector<int> exhaustive_bitwise_map(const LinearCode& code, const std::vector<double>& llr) {
  std::vector<double> p1(code.N, 0.0), p0(code.N, 0.0);
  std::vector<int> msg(code.k, 0);
  for (long long m = 0; m < (1LL << code.k); m++) {
    for (int i = 0; i < code.k; i++) msg[i] = int((m >> i) & 1);
    auto w = encode(code, msg);
    double logw = 0;
    for (int i = 0; i < code.N; i++) logw += 0.5 * llr[i] * (2.0 * w[i] - 1.0);
    double weight = std::exp(logw);
    for (int i = 0; i < code.N; i++) (w[i] ? p1[i] : p0[i]) += weight;
  }
  std::vector<int> bits(code.N);
  for (int i = 0; i < code.N; i++) bits[i] = p1[i] > p0[i] ? 1 : 0;
  return bits;
}

}  // namespace

TEST_CASE("load_code dense: the 3x4 example parity check") {
  auto path = write_temp("hc_toy.txt",
                         "2 4 1\n"
                         "1 0 1 0\n"
                         "0 1 1 1\n"
                         "1 0 0 1\n");
  LinearCode code = load_code(path, CodeFormat::dense_text);
  CHECK(code.N == 4);
  CHECK(code.k == 1);
  // Single nonzero codeword 1011.
  auto w = encode(code, std::vector<int>{1});
  CHECK(w == std::vector<int>{1, 0, 1, 1});
  for (int s : syndrome(code, w)) CHECK(s == 0);
}

TEST_CASE("load_code dense: trailing identity reads A directly") {
  auto path = write_temp("sys_code.txt",
                         "3 3 2\n"
                         "2 1 1\n");
  LinearCode code = load_code(path, CodeFormat::dense_text);
  CHECK(code.p == 3);
  CHECK(code.k == 2);
  CHECK(code.perm == std::vector<int>{0, 1, 2});
  // G = [[1,0,1],[0,1,2]] as in the ternary example; msg (2,1) -> (2,1,1).
  CHECK(encode(code, std::vector<int>{2, 1}) == std::vector<int>{2, 1, 1});
}

TEST_CASE("load_code rejects rank-deficient and malformed input") {
  auto dup = write_temp("rank_def.txt",
                        "2 4 2\n"
                        "1 0 1 0\n"
                        "1 0 1 0\n");
  CHECK_THROWS(load_code(dup, CodeFormat::dense_text));
  auto short_file = write_temp("short.txt", "2 4 1\n1 0 1\n");
  CHECK_THROWS(load_code(short_file, CodeFormat::dense_text));
}

TEST_CASE("alist round trip") {
  // 2x4 binary H = [[1,1,0,1],[0,1,1,1]] in MacKay padded alist form.
  auto path = write_temp("toy.alist",
                         "4 2\n"
                         "2 3\n"
                         "1 2 1 2\n"
                         "3 3\n"
                         "1 0\n1 2\n2 0\n1 2\n"
                         "1 2 4\n2 3 4\n");
  LinearCode code = load_code(path, CodeFormat::alist);
  CHECK(code.N == 4);
  CHECK(code.k == 2);
  CHECK(code.h_at(0, 0) == 1);
  CHECK(code.h_at(0, 2) == 0);
  CHECK(code.h_at(1, 2) == 1);
  SimRng rng{3};
  RngStream st = rng.stream(0);
  for (int t = 0; t < 100; t++) {
    std::vector<int> msg(code.k);
    for (auto& m : msg) m = int(st.uniform_int(0, 1));
    for (int s : syndrome(code, encode(code, msg))) CHECK(s == 0);
  }
}

TEST_CASE("random MacKay-style code has the right dimensions") {
  LinearCode code = random_regular_code(2, 50, 5, 3, 11);
  CHECK(code.N == 50);
  CHECK(code.k == 5);
  // Column weights stay 3 by construction.
  for (int c = 0; c < code.N; c++) {
    int w = 0;
    for (int r = 0; r < code.N - code.k; r++) w += code.h_at(r, c);
    CHECK(w == 3);
  }
}

TEST_CASE("encode rejects out-of-range symbols") {
  LinearCode code = random_regular_code(3, 9, 3, 3, 7);
  CHECK_THROWS(encode(code, std::vector<int>{0, 1, 3}));
  CHECK_THROWS(encode(code, std::vector<int>{0, -1, 2}));
}

TEST_CASE("syndrome of unit-vector errors picks out H columns") {
  LinearCode code = random_regular_code(2, 24, 12, 3, 5);
  std::vector<int> zero(code.N, 0);
  for (int i = 0; i < code.N; i++) {
    auto word = zero;
    word[i] = 1;
    auto syn = syndrome(code, word);
    for (int r = 0; r < code.N - code.k; r++) CHECK(syn[r] == code.h_at(r, i));
  }
}

TEST_CASE("encode/syndrome over random messages, binary and ternary") {
  SimRng rng{17};
  for (int p : {2, 3, 5}) {
    LinearCode code = random_regular_code(p, 30, 15, 3, 7);
    RngStream st = rng.stream(p);
    for (int t = 0; t < 1000; t++) {
      std::vector<int> msg(code.k);
      for (auto& m : msg) m = int(st.uniform_int(0, p - 1));
      for (int s : syndrome(code, encode(code, msg))) CHECK(s == 0);
    }
  }
}

TEST_CASE("expand_parity reproduces the 9x12 lattice check matrix") {
  auto path = write_temp("hc_toy2.txt",
                         "2 4 1\n"
                         "1 0 1 0\n"
                         "0 1 1 1\n"
                         "1 0 0 1\n");
  LinearCode code = load_code(path, CodeFormat::dense_text);
  auto big = expand_parity(code, 3);
  const int expect[9][12] = {
      {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1},
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1},
  };
  REQUIRE(big.size() == 9u * 12u);
  for (int r = 0; r < 9; r++)
    for (int c = 0; c < 12; c++) CHECK(big[size_t(r) * 12 + c] == expect[r][c]);
}

TEST_CASE("sum-product: strong LLR on a codeword converges immediately") {
  LinearCode code = random_regular_code(2, 12, 6, 3, 10);
  TannerGraph graph(code);
  std::vector<int> msg = {1, 0, 1, 1, 0, 1};
  auto w = encode(code, msg);
  std::vector<double> llr(code.N);
  for (int i = 0; i < code.N; i++) llr[i] = 10.0 * (2.0 * w[i] - 1.0);
  auto res = sum_product_decode(graph, llr);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.bits == w);
}

TEST_CASE("sum-product corrects a single flipped sign at magnitude 8") {
  LinearCode code = random_regular_code(2, 12, 6, 3, 10);
  TannerGraph graph(code);
  SimRng rng{31};
  RngStream st = rng.stream(0);
  for (int trial = 0; trial < 200; trial++) {
    std::vector<int> msg(code.k);
    for (auto& m : msg) m = int(st.uniform_int(0, 1));
    auto w = encode(code, msg);
    std::vector<double> llr(code.N);
    for (int i = 0; i < code.N; i++) llr[i] = 8.0 * (2.0 * w[i] - 1.0);
    int flip = int(st.uniform_int(0, code.N - 1));
    llr[flip] = -llr[flip];
    auto res = sum_product_decode(graph, llr);
    // Exhaustive ML over all 2^k codewords is the oracle here.
    double best = -1e300;
    std::vector<int> ml;
    std::vector<int> m2(code.k);
    for (long long m = 0; m < (1LL << code.k); m++) {
      for (int i = 0; i < code.k; i++) m2[i] = int((m >> i) & 1);
      auto cand = encode(code, m2);
      double score = 0;
      for (int i = 0; i < code.N; i++) score += 0.5 * llr[i] * (2.0 * cand[i] - 1.0);
      if (score > best) { best = score; ml = cand; }
    }
    CHECK(ml == w);
    CHECK(res.bits == ml);
  }
}

TEST_CASE("sum-product equals exact MAP on a cycle-free code") {
  // H chosen so the Tanner graph is a tree.
  std::vector<int> h = {
      1, 1, 1, 0, 0, 0,
      0, 0, 1, 1, 1, 0,
      0, 0, 0, 0, 1, 1,
  };
  LinearCode code = code_from_parity(2, 3, 6, h);
  TannerGraph graph(code);
  SimRng rng{41};
  RngStream st = rng.stream(0);
  for (int trial = 0; trial < 500; trial++) {
    std::vector<double> llr(code.N);
    for (auto& v : llr) v = 3.0 * st.normal();
    auto res = sum_product_decode(graph, llr, 20, /*early_exit=*/false);
    auto map_bits = exhaustive_bitwise_map(code, llr);
    // Skip measure-zero posterior ties.
    CHECK(res.bits == map_bits);
  }
}

TEST_CASE("sum-product reports non-convergence on all-zero LLR") {
  LinearCode code = random_regular_code(2, 16, 8, 3, 13);
  TannerGraph graph(code);
  std::vector<double> llr(code.N, 0.0);
  auto res = sum_product_decode(graph, llr, 30);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 30);
}

TEST_CASE("sum-product symmetry: negated LLR decodes to the complement") {
  // (3,6)-regular H has even row weights, so the all-ones word is a codeword.
  LinearCode code = random_regular_code(2, 12, 6, 3, 10);
  std::vector<int> ones(code.N, 1);
  bool all_ones_codeword = true;
  for (int s : syndrome(code, ones)) all_ones_codeword &= (s == 0);
  REQUIRE(all_ones_codeword);
  TannerGraph graph(code);
  SimRng rng{53};
  RngStream st = rng.stream(0);
  for (int trial = 0; trial < 100; trial++) {
    std::vector<double> llr(code.N), neg(code.N);
    for (int i = 0; i < code.N; i++) {
      llr[i] = 2.5 * st.normal() + 0.01;  // keep posteriors off exact zero
      neg[i] = -llr[i];
    }
    auto a = sum_product_decode(graph, llr, 40);
    auto b = sum_product_decode(graph, neg, 40);
    if (a.converged && b.converged) {
      for (int i = 0; i < code.N; i++) CHECK(a.bits[i] == 1 - b.bits[i]);
    }
  }
}

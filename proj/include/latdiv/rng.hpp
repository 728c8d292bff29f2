#pragma once

#include <cstdint>

namespace latdiv {

// Counter-derived random stream: the pair (master seed, stream id) fully
// determines the draw sequence, so trials can be farmed out to any number
// of workers and still replay bit-identically.
class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream_id);

  uint64_t next_u64();
  double uniform01();  // in (0, 1)
  double normal();     // standard normal, Box-Muller
  long long uniform_int(long long lo, long long hi);  // inclusive bounds

 private:
  uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SimRng {
  uint64_t master_seed = 1;
  RngStream stream(uint64_t id) const { return RngStream(master_seed, id); }
};

}  // namespace latdiv

#include "latdiv/simulate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latdiv/channel.hpp"
#include "latdiv/decoder.hpp"

namespace latdiv {

namespace {

std::string fmt_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct FrameOutcome {
  bool error = false;
  bool error_iterative = false;  // compare runs only
  float bp_iters = 0;
  float sd_nodes = 0;
};

// Per-frame stream id: experiment-local, independent of worker scheduling.
uint64_t stream_id(int point, long long frame) { return (uint64_t(point) << 40) | uint64_t(frame); }

struct FrameContext {
  const ConstructionALattice* lat;
  double sigma_coset = 0;     // untranslated transmission
  double sigma_iterative = 0; // translated (2x-1) transmission
  int coord_box = 4;
  int bp_max_iter = 50;
};

// Draw order is part of the determinism contract: message, ideal
// coordinates, fading, then noise.
FrameOutcome simulate_frame(const FrameContext& ctx, DecoderKind kind, const SimRng& rng,
                            uint64_t stream) {
  const auto& lat = *ctx.lat;
  const auto& code = lat.code();
  int n = lat.field().degree;
  RngStream st = rng.stream(stream);
  std::vector<int> msg(code.k);
  for (int i = 0; i < code.k; i++) msg[i] = int(st.uniform_int(0, code.p - 1));
  std::vector<long long> zp(lat.dim());
  for (auto& v : zp) v = st.uniform_int(-ctx.coord_box, ctx.coord_box);
  std::vector<int> cw = encode(code, msg);
  LatticePoint pt = encode_point(lat, cw, zp);
  FadingRealization fading = sample_fading(n, st);

  FrameOutcome out;
  if (kind == DecoderKind::iterative) {
    auto y = transmit(bpsk_translate(pt.x), fading, ctx.sigma_iterative, st);
    DecodeResult res = iterative_decode(lat, y, fading, ctx.sigma_iterative, ctx.bp_max_iter);
    out.error = res.c_hat != cw || res.z_hat != zp;
    out.bp_iters = float(res.bp_iterations);
    out.sd_nodes = float(res.sd_nodes);
  } else {
    auto y = transmit(pt.x, fading, ctx.sigma_coset, st);
    DecodeResult res = coset_decode(lat, y, fading);
    out.error = res.c_hat != cw || res.z_hat != zp;
    out.sd_nodes = float(res.sd_nodes);
  }
  return out;
}

// Common-random-numbers frame: same draws, both decoders, noise scaled to
// each transmission's own volume so the SNR definition matches per system.
FrameOutcome simulate_frame_paired(const FrameContext& ctx, const SimRng& rng, uint64_t stream) {
  const auto& lat = *ctx.lat;
  const auto& code = lat.code();
  int n = lat.field().degree;
  RngStream st = rng.stream(stream);
  std::vector<int> msg(code.k);
  for (int i = 0; i < code.k; i++) msg[i] = int(st.uniform_int(0, code.p - 1));
  std::vector<long long> zp(lat.dim());
  for (auto& v : zp) v = st.uniform_int(-ctx.coord_box, ctx.coord_box);
  std::vector<int> cw = encode(code, msg);
  LatticePoint pt = encode_point(lat, cw, zp);
  FadingRealization fading = sample_fading(n, st);
  std::vector<double> noise(lat.dim());
  for (auto& v : noise) v = st.normal();

  std::vector<double> y_coset(lat.dim()), y_iter(lat.dim());
  auto xt = bpsk_translate(pt.x);
  for (int i = 0; i < lat.dim(); i++) {
    double hxi = fading.h[i % n];
    y_coset[i] = hxi * pt.x[i] + ctx.sigma_coset * noise[i];
    y_iter[i] = hxi * xt[i] + ctx.sigma_iterative * noise[i];
  }
  DecodeResult rc = coset_decode(lat, y_coset, fading);
  DecodeResult ri = iterative_decode(lat, y_iter, fading, ctx.sigma_iterative, ctx.bp_max_iter);
  FrameOutcome out;
  out.error = rc.c_hat != cw || rc.z_hat != zp;
  out.error_iterative = ri.c_hat != cw || ri.z_hat != zp;
  out.bp_iters = float(ri.bp_iterations);
  out.sd_nodes = float(rc.sd_nodes);
  return out;
}

int resolve_workers(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

// Runs frames for one SNR point with sequential early-stopping semantics:
// results are scanned in frame order and the point stops at the exact frame
// where min_errors is reached, no matter how many workers ran ahead.
template <typename FrameFn>
void run_point(long long max_frames, long long min_errors, int workers, FrameFn&& frame_fn,
               std::vector<FrameOutcome>& kept) {
  long long chunk = std::max<long long>(256, 16LL * workers);
  long long done = 0, errors = 0;
  std::vector<FrameOutcome> buf;
  while (done < max_frames) {
    long long count = std::min(chunk, max_frames - done);
    buf.assign(size_t(count), FrameOutcome{});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
#endif
    for (long long i = 0; i < count; i++) buf[size_t(i)] = frame_fn(done + i);
    bool stop = false;
    for (long long i = 0; i < count && !stop; i++) {
      kept.push_back(buf[size_t(i)]);
      errors += buf[size_t(i)].error ? 1 : 0;
      if (errors >= min_errors) stop = true;
    }
    if (stop) return;
    done += count;
  }
}

std::string decoder_name(DecoderKind k) { return k == DecoderKind::iterative ? "iterative" : "coset"; }

void emit_outputs(const ExperimentConfig& cfg, const std::string& kind, const std::string& csv,
                  const std::vector<std::pair<std::string, std::string>>& point_entries,
                  double wallclock_s) {
  if (cfg.out_path.empty()) return;
  {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
    out << csv;
  }
  std::vector<std::pair<std::string, std::string>> entries;
  entries.emplace_back("version", kVersion);
  entries.emplace_back("kind", kind);
  entries.emplace_back("field", cfg.field_spec);
  entries.emplace_back("code", cfg.code_path.empty() ? cfg.code_gen.to_string() : cfg.code_path);
  entries.emplace_back("decoder", decoder_name(cfg.decoder));
  entries.emplace_back("prime", std::to_string(cfg.prime));
  entries.emplace_back("prime_ideal_index", std::to_string(cfg.prime_ideal_index));
  entries.emplace_back("seed", std::to_string(cfg.seed));
  entries.emplace_back("workers", std::to_string(cfg.workers));
  entries.emplace_back("max_frames", std::to_string(cfg.max_frames));
  entries.emplace_back("min_frame_errors", std::to_string(cfg.min_frame_errors));
  entries.emplace_back("coord_box", std::to_string(cfg.coord_box));
  entries.emplace_back("bp_max_iter", std::to_string(cfg.bp_max_iter));
  entries.emplace_back("wallclock_s", fmt_g6(wallclock_s));
  for (const auto& e : point_entries) entries.push_back(e);
  write_manifest(cfg.out_path + ".manifest", entries);
}

}  // namespace

std::string CodeGenParams::to_string() const {
  return "gen:p=" + std::to_string(p) + ",N=" + std::to_string(N) + ",k=" + std::to_string(k) +
         ",wc=" + std::to_string(col_weight) + ",seed=" + std::to_string(seed);
}

std::vector<double> ExperimentConfig::snr_grid() const {
  std::vector<double> g;
  if (snr_db_step <= 0) throw ConfigError("snr-db-step must be positive");
  for (double v = snr_db_start; v <= snr_db_stop + 1e-9; v += snr_db_step) g.push_back(v);
  if (g.empty()) throw ConfigError("empty SNR grid");
  return g;
}

void ExperimentConfig::validate() const {
  snr_grid();
  if (max_frames < 1) throw ConfigError("frames must be >= 1");
  if (min_frame_errors < 1) throw ConfigError("min-errors must be >= 1");
  if (max_frames < min_frame_errors) throw ConfigError("frames must be >= min-errors");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (coord_box < 1) throw ConfigError("coord-box must be >= 1");
  if (bp_max_iter < 1) throw ConfigError("bp-max-iter must be >= 1");
  if (code_path.empty() && !code_gen.set()) throw ConfigError("no code file or generator parameters");
  if (outage_blocks < 1) throw ConfigError("outage blocks must be >= 1");
  if (outage_trials < 10000) throw ConfigError("outage trials must be >= 10000");
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto strip = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": no '='");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    try {
      if (key == "field") cfg.field_spec = val;
      else if (key == "code") cfg.code_path = val;
      else if (key == "code_format") cfg.code_format = val;
      else if (key == "gen_p") cfg.code_gen.p = std::stoi(val);
      else if (key == "gen_n") cfg.code_gen.N = std::stoi(val);
      else if (key == "gen_k") cfg.code_gen.k = std::stoi(val);
      else if (key == "gen_col_weight") cfg.code_gen.col_weight = std::stoi(val);
      else if (key == "gen_seed") cfg.code_gen.seed = std::stoull(val);
      else if (key == "prime") cfg.prime = std::stoi(val);
      else if (key == "prime_ideal_index") cfg.prime_ideal_index = std::stoi(val);
      else if (key == "decoder") {
        if (val == "iterative") cfg.decoder = DecoderKind::iterative;
        else if (val == "coset") cfg.decoder = DecoderKind::coset;
        else throw ConfigError("unknown decoder '" + val + "'");
      } else if (key == "snr_db_start") cfg.snr_db_start = std::stod(val);
      else if (key == "snr_db_stop") cfg.snr_db_stop = std::stod(val);
      else if (key == "snr_db_step") cfg.snr_db_step = std::stod(val);
      else if (key == "frames") cfg.max_frames = std::stoll(val);
      else if (key == "min_errors") cfg.min_frame_errors = std::stoll(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "workers") cfg.workers = std::stoi(val);
      else if (key == "bp_max_iter") cfg.bp_max_iter = std::stoi(val);
      else if (key == "coord_box") cfg.coord_box = std::stoi(val);
      else if (key == "outage_blocks") cfg.outage_blocks = std::stoi(val);
      else if (key == "outage_trials") cfg.outage_trials = std::stoll(val);
      else if (key == "out") cfg.out_path = val;
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(lineno) + ": bad value for " + key);
    }
  }
}

ConstructionALattice lattice_from_config(const ExperimentConfig& cfg) {
  NumberField field = build_field(cfg.field_spec);
  LinearCode code;
  if (!cfg.code_path.empty()) {
    CodeFormat fmt = cfg.code_format == "alist" ? CodeFormat::alist : CodeFormat::dense_text;
    code = load_code(cfg.code_path, fmt);
  } else {
    const auto& g = cfg.code_gen;
    code = random_regular_code(g.p, g.N, g.k, g.col_weight, g.seed);
  }
  if (code.p != cfg.prime)
    throw ConfigError("code alphabet p=" + std::to_string(code.p) + " does not match prime " +
                      std::to_string(cfg.prime));
  auto ideals = split_prime(field, cfg.prime);
  std::vector<PrimeIdealAboveP> usable;
  for (auto& ideal : ideals)
    if (ideal.f == 1) usable.push_back(std::move(ideal));
  if (usable.empty())
    throw ConfigError("no residue-degree-one ideal above " + std::to_string(cfg.prime) + " in " +
                      cfg.field_spec);
  if (cfg.prime_ideal_index < 0 || cfg.prime_ideal_index >= int(usable.size()))
    throw ConfigError("prime-ideal index out of range (have " + std::to_string(usable.size()) +
                      " residue-degree-one ideals)");
  return build_lattice(std::move(field), std::move(usable[size_t(cfg.prime_ideal_index)]),
                       std::move(code));
}

FerCurve run_fer_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  ConstructionALattice lat = lattice_from_config(cfg);
  if (cfg.decoder == DecoderKind::iterative && lat.code().p != 2)
    throw ConfigError("iterative decoder requires a binary code");
  int workers = resolve_workers(cfg.workers);
  SimRng rng{cfg.seed};
  auto grid = cfg.snr_grid();

  FerCurve curve;
  std::vector<std::pair<std::string, std::string>> point_entries;
  for (int pi = 0; pi < int(grid.size()); pi++) {
    double gamma = db_to_linear(grid[size_t(pi)]);
    FrameContext ctx;
    ctx.lat = &lat;
    ctx.coord_box = cfg.coord_box;
    ctx.bp_max_iter = cfg.bp_max_iter;
    if (cfg.sigma_override) {
      ctx.sigma_coset = ctx.sigma_iterative = *cfg.sigma_override;
    } else {
      ctx.sigma_coset = sigma_from_snr_log(lat.log_volume(), lat.dim(), gamma);
      ctx.sigma_iterative = 2.0 * ctx.sigma_coset;  // translated lattice volume is 2^dim vol
    }
    std::vector<FrameOutcome> kept;
    run_point(cfg.max_frames, cfg.min_frame_errors, workers,
              [&](long long f) { return simulate_frame(ctx, cfg.decoder, rng, stream_id(pi, f)); },
              kept);
    FerPoint pt;
    pt.gamma_db = grid[size_t(pi)];
    pt.frames = (long long)kept.size();
    double bp_sum = 0, sd_sum = 0;
    for (const auto& o : kept) {
      pt.frame_errors += o.error ? 1 : 0;
      bp_sum += o.bp_iters;
      sd_sum += o.sd_nodes;
    }
    pt.mean_bp_iters = pt.frames ? bp_sum / double(pt.frames) : 0;
    pt.mean_sd_nodes = pt.frames ? sd_sum / double(pt.frames) : 0;
    curve.points.push_back(pt);
    std::string pfx = "point." + std::to_string(pi) + ".";
    point_entries.emplace_back(pfx + "gamma_db", fmt_db(pt.gamma_db));
    point_entries.emplace_back(pfx + "frames", std::to_string(pt.frames));
    point_entries.emplace_back(pfx + "frame_errors", std::to_string(pt.frame_errors));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_outputs(cfg, "fer", fer_csv(curve), point_entries, secs);
  return curve;
}

FerCurve run_outage(const ExperimentConfig& cfg) {
  if (cfg.outage_blocks < 1) throw ConfigError("outage blocks must be >= 1");
  if (cfg.outage_trials < 10000) throw ConfigError("outage trials must be >= 10000");
  auto t0 = std::chrono::steady_clock::now();
  auto grid = cfg.snr_grid();
  int workers = resolve_workers(cfg.workers);
  FerCurve curve;
  std::vector<std::pair<std::string, std::string>> point_entries;
  for (int pi = 0; pi < int(grid.size()); pi++) {
    // Offset stream ids per grid point so points are independent.
    SimRng rng{cfg.seed + 0x9E3779B9ull * uint64_t(pi + 1)};
    double p = poltyrev_outage_mc(cfg.outage_blocks, db_to_linear(grid[size_t(pi)]),
                                  cfg.outage_trials, rng, nullptr, workers);
    FerPoint pt;
    pt.gamma_db = grid[size_t(pi)];
    pt.frames = cfg.outage_trials;
    pt.frame_errors = llround(p * double(cfg.outage_trials));
    curve.points.push_back(pt);
    std::string pfx = "point." + std::to_string(pi) + ".";
    point_entries.emplace_back(pfx + "gamma_db", fmt_db(pt.gamma_db));
    point_entries.emplace_back(pfx + "trials", std::to_string(pt.frames));
    point_entries.emplace_back(pfx + "outages", std::to_string(pt.frame_errors));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_outputs(cfg, "outage", outage_csv(curve), point_entries, secs);
  return curve;
}

CompareCurve compare_decoders(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  ConstructionALattice lat = lattice_from_config(cfg);
  if (lat.code().p != 2) throw ConfigError("decoder comparison requires a binary code");
  int workers = resolve_workers(cfg.workers);
  SimRng rng{cfg.seed};
  auto grid = cfg.snr_grid();

  CompareCurve curve;
  std::vector<std::pair<std::string, std::string>> point_entries;
  for (int pi = 0; pi < int(grid.size()); pi++) {
    double gamma = db_to_linear(grid[size_t(pi)]);
    FrameContext ctx;
    ctx.lat = &lat;
    ctx.coord_box = cfg.coord_box;
    ctx.bp_max_iter = cfg.bp_max_iter;
    if (cfg.sigma_override) {
      ctx.sigma_coset = ctx.sigma_iterative = *cfg.sigma_override;
    } else {
      ctx.sigma_coset = sigma_from_snr_log(lat.log_volume(), lat.dim(), gamma);
      ctx.sigma_iterative = 2.0 * ctx.sigma_coset;
    }
    // Stop when the weaker count reaches min_frame_errors so both FERs are
    // estimated from the same frames.
    long long chunk = std::max<long long>(256, 16LL * workers);
    long long done = 0;
    CompareCurvePoint pt;
    pt.gamma_db = grid[size_t(pi)];
    std::vector<FrameOutcome> buf;
    while (done < cfg.max_frames) {
      long long count = std::min(chunk, cfg.max_frames - done);
      buf.assign(size_t(count), FrameOutcome{});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
#endif
      for (long long i = 0; i < count; i++)
        buf[size_t(i)] = simulate_frame_paired(ctx, rng, stream_id(pi, done + i));
      bool stop = false;
      for (long long i = 0; i < count && !stop; i++) {
        pt.frames++;
        pt.errors_coset += buf[size_t(i)].error ? 1 : 0;
        pt.errors_iterative += buf[size_t(i)].error_iterative ? 1 : 0;
        if (std::min(pt.errors_coset, pt.errors_iterative) >= cfg.min_frame_errors) stop = true;
      }
      if (stop) break;
      done += count;
    }
    curve.points.push_back(pt);
    std::string pfx = "point." + std::to_string(pi) + ".";
    point_entries.emplace_back(pfx + "gamma_db", fmt_db(pt.gamma_db));
    point_entries.emplace_back(pfx + "frames", std::to_string(pt.frames));
    point_entries.emplace_back(pfx + "errors_iterative", std::to_string(pt.errors_iterative));
    point_entries.emplace_back(pfx + "errors_coset", std::to_string(pt.errors_coset));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_outputs(cfg, "compare", compare_csv(curve), point_entries, secs);
  return curve;
}

std::string fer_csv(const FerCurve& curve) {
  std::string out = "gamma_db,frames,frame_errors,fer,ci95,mean_bp_iters,mean_sd_nodes\n";
  for (const auto& pt : curve.points) {
    out += fmt_db(pt.gamma_db) + "," + std::to_string(pt.frames) + "," +
           std::to_string(pt.frame_errors) + "," + fmt_g6(pt.fer()) + "," + fmt_g6(pt.ci95()) + "," +
           fmt_g6(pt.mean_bp_iters) + "," + fmt_g6(pt.mean_sd_nodes) + "\n";
  }
  return out;
}

std::string outage_csv(const FerCurve& curve) {
  std::string out = "gamma_db,p_out,ci\n";
  for (const auto& pt : curve.points)
    out += fmt_db(pt.gamma_db) + "," + fmt_g6(pt.fer()) + "," + fmt_g6(pt.ci95()) + "\n";
  return out;
}

std::string compare_csv(const CompareCurve& curve) {
  std::string out =
      "gamma_db,frames,fe_iterative,fer_iterative,ci_iterative,fe_coset,fer_coset,ci_coset\n";
  for (const auto& pt : curve.points) {
    double fi = pt.frames ? double(pt.errors_iterative) / double(pt.frames) : 0;
    double fc = pt.frames ? double(pt.errors_coset) / double(pt.frames) : 0;
    out += fmt_db(pt.gamma_db) + "," + std::to_string(pt.frames) + "," +
           std::to_string(pt.errors_iterative) + "," + fmt_g6(fi) + "," +
           fmt_g6(wilson_halfwidth(pt.errors_iterative, pt.frames)) + "," +
           std::to_string(pt.errors_coset) + "," + fmt_g6(fc) + "," +
           fmt_g6(wilson_halfwidth(pt.errors_coset, pt.frames)) + "\n";
  }
  return out;
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest " + tmp);
    for (const auto& [k, v] : entries) out << k << "=" << v << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move manifest into place: " + path);
}

}  // namespace latdiv

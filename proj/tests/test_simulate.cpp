#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "latdiv/simulate.hpp"

using namespace latdiv;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.field_spec = "quadratic(2)";
  cfg.code_gen = {2, 10, 5, 3, 19};
  cfg.prime = 2;
  cfg.decoder = DecoderKind::coset;
  cfg.snr_db_start = 16;
  cfg.snr_db_stop = 20;
  cfg.snr_db_step = 2;
  cfg.max_frames = 400;
  cfg.min_frame_errors = 40;
  cfg.seed = 9001;
  cfg.workers = 1;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("zero-noise sweep has zero FER everywhere") {
  ExperimentConfig cfg = base_config();
  cfg.sigma_override = 0.0;
  cfg.max_frames = 50;
  cfg.min_frame_errors = 1;
  auto curve = run_fer_sweep(cfg);
  REQUIRE(curve.points.size() == 3);
  for (const auto& pt : curve.points) {
    CHECK(pt.frame_errors == 0);
    CHECK(pt.frames == 50);
  }
}

TEST_CASE("sweep is byte-identical across worker counts") {
  auto tmp = std::filesystem::temp_directory_path();
  ExperimentConfig cfg = base_config();
  cfg.out_path = (tmp / "sweep_w1.csv").string();
  cfg.workers = 1;
  run_fer_sweep(cfg);
  ExperimentConfig cfg8 = cfg;
  cfg8.workers = 8;
  cfg8.out_path = (tmp / "sweep_w8.csv").string();
  run_fer_sweep(cfg8);
  std::string a = slurp(cfg.out_path), b = slurp(cfg8.out_path);
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("same seed reproduces the identical curve object") {
  ExperimentConfig cfg = base_config();
  auto c1 = run_fer_sweep(cfg);
  auto c2 = run_fer_sweep(cfg);
  REQUIRE(c1.points.size() == c2.points.size());
  for (size_t i = 0; i < c1.points.size(); i++) {
    CHECK(c1.points[i].frames == c2.points[i].frames);
    CHECK(c1.points[i].frame_errors == c2.points[i].frame_errors);
    CHECK(c1.points[i].mean_sd_nodes == c2.points[i].mean_sd_nodes);
  }
}

TEST_CASE("early stopping reports exactly the frames scanned") {
  ExperimentConfig cfg = base_config();
  cfg.snr_db_start = cfg.snr_db_stop = 10;  // high FER so the stop hits early
  cfg.max_frames = 100000;
  cfg.min_frame_errors = 25;
  for (int workers : {1, 4}) {
    cfg.workers = workers;
    auto curve = run_fer_sweep(cfg);
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].frame_errors == 25);
    CHECK(curve.points[0].frames < 100000);
    // The stop index is the first frame where the count is reached, so the
    // last kept frame is an error.
    static long long frames_once = curve.points[0].frames;
    CHECK(curve.points[0].frames == frames_once);
  }
}

TEST_CASE("CSV schema is stable") {
  FerCurve curve;
  FerPoint pt;
  pt.gamma_db = 14.0;
  pt.frames = 20000;
  pt.frame_errors = 412;
  pt.mean_bp_iters = 5.25;
  pt.mean_sd_nodes = 61.4375;
  curve.points.push_back(pt);
  CHECK(fer_csv(curve) ==
        "gamma_db,frames,frame_errors,fer,ci95,mean_bp_iters,mean_sd_nodes\n"
        "14.00,20000,412,0.0206,0.00197051,5.25,61.4375\n");

  FerCurve out;
  FerPoint op;
  op.gamma_db = 30.0;
  op.frames = 1000000;
  op.frame_errors = 16935;
  out.points.push_back(op);
  CHECK(outage_csv(out) ==
        "gamma_db,p_out,ci\n"
        "30.00,0.016935,0.000252896\n");

  CompareCurve cc;
  CompareCurvePoint cp;
  cp.gamma_db = 18.0;
  cp.frames = 5000;
  cp.errors_iterative = 120;
  cp.errors_coset = 80;
  cc.points.push_back(cp);
  CHECK(compare_csv(cc) ==
        "gamma_db,frames,fe_iterative,fer_iterative,ci_iterative,fe_coset,fer_coset,ci_coset\n"
        "18.00,5000,120,0.024,0.00425631,80,0.016,0.00349639\n");
}

TEST_CASE("manifest is written next to the CSV") {
  auto tmp = std::filesystem::temp_directory_path();
  ExperimentConfig cfg = base_config();
  cfg.max_frames = 60;
  cfg.min_frame_errors = 10;
  cfg.out_path = (tmp / "manifest_probe.csv").string();
  run_fer_sweep(cfg);
  std::string man = slurp(cfg.out_path + ".manifest");
  CHECK(man.find("version=0.1.0\n") != std::string::npos);
  CHECK(man.find("kind=fer\n") != std::string::npos);
  CHECK(man.find("field=quadratic(2)\n") != std::string::npos);
  CHECK(man.find("point.0.gamma_db=16.00\n") != std::string::npos);
  CHECK(man.find("point.0.frames=") != std::string::npos);
}

TEST_CASE("config file parsing with overrides and errors") {
  auto tmp = std::filesystem::temp_directory_path();
  auto path = (tmp / "probe.cfg").string();
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "field = quadratic(10)\n"
        << "decoder = iterative\n"
        << "snr_db_start = 12\n"
        << "gen_n = 20\n"
        << "gen_k = 10\n"
        << "min_errors = 7\n";
  }
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  CHECK(cfg.field_spec == "quadratic(10)");
  CHECK(cfg.decoder == DecoderKind::iterative);
  CHECK(cfg.snr_db_start == 12);
  CHECK(cfg.code_gen.N == 20);
  CHECK(cfg.min_frame_errors == 7);

  auto bad = (tmp / "bad.cfg").string();
  {
    std::ofstream out(bad);
    out << "no_such_key = 1\n";
  }
  ExperimentConfig cfg2;
  CHECK_THROWS_AS(apply_config_file(cfg2, bad), ConfigError);
}

TEST_CASE("config validation catches inconsistencies") {
  ExperimentConfig cfg = base_config();
  cfg.snr_db_step = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base_config();
  cfg.max_frames = 10;
  cfg.min_frame_errors = 100;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base_config();
  cfg.code_gen.N = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base_config();
  cfg.field_spec = "quadratic(5)";  // no degree-one ideal above 2
  CHECK_THROWS_AS(run_fer_sweep(cfg), ConfigError);
}

TEST_CASE("compare runs both decoders on common randomness") {
  ExperimentConfig cfg = base_config();
  cfg.code_gen = {2, 10, 5, 3, 19};
  cfg.snr_db_start = cfg.snr_db_stop = 14;
  cfg.max_frames = 300;
  cfg.min_frame_errors = 20;
  auto c1 = compare_decoders(cfg);
  auto c2 = compare_decoders(cfg);
  REQUIRE(c1.points.size() == 1);
  CHECK(c1.points[0].frames == c2.points[0].frames);
  CHECK(c1.points[0].errors_coset == c2.points[0].errors_coset);
  CHECK(c1.points[0].errors_iterative == c2.points[0].errors_iterative);

  ExperimentConfig zero = cfg;
  zero.sigma_override = 0.0;
  zero.max_frames = 40;
  zero.min_frame_errors = 1;
  auto cz = compare_decoders(zero);
  CHECK(cz.points[0].errors_coset == 0);
  CHECK(cz.points[0].errors_iterative == 0);
}

TEST_CASE("outage runner wraps the MC estimator") {
  ExperimentConfig cfg;
  cfg.snr_db_start = 24;
  cfg.snr_db_stop = 30;
  cfg.snr_db_step = 3;
  cfg.outage_blocks = 1;
  cfg.outage_trials = 100000;
  cfg.seed = 7;
  auto curve = run_outage(cfg);
  REQUIRE(curve.points.size() == 3);
  for (size_t i = 0; i + 1 < curve.points.size(); i++)
    CHECK(curve.points[i].fer() > curve.points[i + 1].fer());
  ExperimentConfig bad = cfg;
  bad.snr_db_step = -2;
  CHECK_THROWS_AS(run_outage(bad), ConfigError);
}

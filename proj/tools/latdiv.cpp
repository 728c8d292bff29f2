// latdiv: construct full-diversity Construction A lattices, decode them over
// Rayleigh block-fading channels, and run the FER/outage experiments.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "latdiv/channel.hpp"
#include "latdiv/decoder.hpp"
#include "latdiv/simulate.hpp"

using namespace latdiv;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void print_matrix(const Mat& m) {
  for (int i = 0; i < m.rows(); i++) {
    for (int j = 0; j < m.cols(); j++) std::printf("% 14.8f", m(i, j));
    std::printf("\n");
  }
}

void cmd_field_info(const std::string& spec, int prime, const std::string& catalog_path) {
  const FieldCatalog* catalog = &FieldCatalog::builtin();
  FieldCatalog loaded;
  if (!catalog_path.empty()) {
    loaded = FieldCatalog::load(catalog_path);
    catalog = &loaded;
  }
  NumberField f = build_field(spec, *catalog);
  std::printf("field       %s\n", f.tag.c_str());
  std::printf("degree      %d\n", f.degree);
  std::printf("signature   (%d, %d)\n", f.r1, f.r2);
  std::printf("disc        %lld\n", f.disc);
  std::printf("min-poly    %s\n", f.min_poly.to_string().c_str());
  std::printf("embedding M (rows = integral basis):\n");
  print_matrix(f.embedding);
  if (prime > 0) {
    auto ideals = split_prime(f, prime);
    std::printf("splitting of %d: %zu ideal(s)\n", prime, ideals.size());
    for (size_t i = 0; i < ideals.size(); i++) {
      const auto& ideal = ideals[i];
      std::printf("  ideal %zu: e=%d f=%d", i, ideal.e, ideal.f);
      if (ideal.f == 1) std::printf(" root=%d", ideal.root_mod_p);
      std::printf("  Z-basis rows:");
      for (int r = 0; r < ideal.zbasis.rows; r++) {
        std::printf(" (");
        for (int c = 0; c < ideal.zbasis.cols; c++)
          std::printf("%s%lld", c ? "," : "", ideal.zbasis.at(r, c));
        std::printf(")");
      }
      std::printf("\n");
    }
  }
}

void cmd_lattice_build(const ExperimentConfig& cfg, const std::string& out_prefix) {
  ConstructionALattice lat = lattice_from_config(cfg);
  std::printf("field     %s\n", lat.field().tag.c_str());
  std::printf("code      [%d,%d] over F_%d\n", lat.code().N, lat.code().k, lat.code().p);
  std::printf("dimension %d\n", lat.dim());
  std::printf("volume    %.10g  (log %.10g)\n", lat.volume(), lat.log_volume());
  if (!out_prefix.empty()) {
    const Mat& g = lat.generator();
    std::string bin = out_prefix + ".gen.bin", hdr = out_prefix + ".gen.txt";
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + bin);
    out.write(reinterpret_cast<const char*>(g.data().data()),
              std::streamsize(g.data().size() * sizeof(double)));
    std::ofstream h(hdr);
    h << "rows=" << g.rows() << "\ncols=" << g.cols() << "\nlayout=row-major float64\n"
      << "field=" << lat.field().tag << "\nvolume=" << lat.volume() << "\n";
    std::printf("wrote %s and %s\n", bin.c_str(), hdr.c_str());
  }
}

void cmd_mindist(const std::string& spec, double radius) {
  NumberField f = build_field(spec);
  auto pd = min_product_distance(f, radius);
  std::printf("field   %s\n", f.tag.c_str());
  std::printf("d_pmin  %.10g\n", pd.d_pmin);
  std::printf("Nd_pmin %.10g  (1/sqrt(disc) = %.10g)\n", pd.nd_pmin,
              1.0 / std::sqrt(double(f.disc)));
  std::printf("argmin  (");
  for (size_t i = 0; i < pd.argmin.size(); i++)
    std::printf("%s%lld", i ? "," : "", pd.argmin[i]);
  std::printf(")\n");
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vector file " + path);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (v.empty()) throw ConfigError("vector file " + path + " is empty");
  return v;
}

void cmd_decode(const ExperimentConfig& cfg, const std::string& y_path, const std::string& h_list,
                double sigma) {
  ConstructionALattice lat = lattice_from_config(cfg);
  auto y = read_vector_file(y_path);
  if (int(y.size()) != lat.dim())
    throw ConfigError("y has " + std::to_string(y.size()) + " entries, lattice dimension is " +
                      std::to_string(lat.dim()));
  FadingRealization fading;
  {
    std::stringstream ss(h_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) fading.h.push_back(std::stod(tok));
  }
  if (fading.blocks() != lat.field().degree)
    throw ConfigError("need one fading gain per block (" + std::to_string(lat.field().degree) + ")");
  ChannelOutput rx{std::move(y), std::move(fading), sigma};
  DecodeResult res = cfg.decoder == DecoderKind::iterative
                         ? iterative_decode(lat, rx.y, rx.fading, rx.sigma, cfg.bp_max_iter)
                         : coset_decode(lat, rx.y, rx.fading);
  std::printf("c_hat   ");
  for (int c : res.c_hat) std::printf("%d ", c);
  std::printf("\nz_hat   ");
  for (long long z : res.z_hat) std::printf("%lld ", z);
  std::printf("\nx_hat   ");
  for (double v : res.x_hat) std::printf("%.10g ", v);
  std::printf("\nresidual_sq %.10g\n", res.residual_sq);
  std::printf("codeword_ok %s\n", res.codeword_ok ? "yes" : "no");
  if (cfg.decoder == DecoderKind::iterative)
    std::printf("bp converged=%s iterations=%d\n", res.converged ? "yes" : "no", res.bp_iterations);
}

void add_code_options(CLI::App* app, ExperimentConfig& cfg, std::string& gen_spec) {
  app->add_option("--code", cfg.code_path, "code file (dense text or alist)");
  app->add_option("--code-format", cfg.code_format, "dense|alist")->check(CLI::IsMember({"dense", "alist"}));
  app->add_option("--gen-code", gen_spec, "random code parameters p,N,k,colweight,seed");
  app->add_option("--prime", cfg.prime, "rational prime of the ideal / code alphabet");
  app->add_option("--prime-ideal", cfg.prime_ideal_index, "index among the degree-one ideals");
}

void parse_gen_spec(const std::string& gen_spec, ExperimentConfig& cfg) {
  if (gen_spec.empty()) return;
  int fields[5] = {2, 0, 0, 3, 1};
  std::stringstream ss(gen_spec);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',') && i < 5) fields[i++] = std::stoi(tok);
  if (i < 3) throw ConfigError("--gen-code needs at least p,N,k");
  cfg.code_gen = {fields[0], fields[1], fields[2], fields[3], uint64_t(fields[4])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latdiv: full-diversity Construction A lattices on block-fading channels"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string gen_spec, config_path;

  // Config file values act as defaults; explicit flags override them, so the
  // file has to be loaded before CLI11 parses.
  for (int i = 1; i + 1 < argc; i++)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  for (int i = 1; i < argc; i++) {
    std::string a = argv[i];
    if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }

  // field info
  auto* field = app.add_subcommand("field", "number field inspection");
  auto* info = field->add_subcommand("info", "print embedding, discriminant, splitting");
  std::string spec_arg = "quadratic(2)", catalog_path;
  int info_prime = 0;
  info->add_option("spec", spec_arg, "field spec, e.g. quadratic(10)")->required();
  info->add_option("--prime", info_prime, "also print the splitting of this prime");
  info->add_option("--catalog", catalog_path, "field catalog file (defaults to builtin)");

  // lattice build
  auto* lattice = app.add_subcommand("lattice", "lattice construction");
  auto* lbuild = lattice->add_subcommand("build", "materialize a Construction A lattice");
  std::string out_prefix;
  lbuild->add_option("--field", cfg.field_spec, "field spec");
  add_code_options(lbuild, cfg, gen_spec);
  lbuild->add_option("--out", out_prefix, "write <out>.gen.bin (row-major) and <out>.gen.txt");

  // simulate fer / compare
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  auto* fer = simulate->add_subcommand("fer", "frame error rate sweep");
  auto* cmp = simulate->add_subcommand("compare", "paired iterative vs coset sweep");
  for (CLI::App* s : {fer, cmp}) {
    s->add_option("--config", config_path, "key=value config file (flags override)");
    s->add_option("--field", cfg.field_spec, "field spec");
    add_code_options(s, cfg, gen_spec);
    s->add_option("--snr-db-start", cfg.snr_db_start);
    s->add_option("--snr-db-stop", cfg.snr_db_stop);
    s->add_option("--snr-db-step", cfg.snr_db_step);
    s->add_option("--frames", cfg.max_frames, "frame cap per SNR point");
    s->add_option("--min-errors", cfg.min_frame_errors, "early-stop error target");
    s->add_option("--seed", cfg.seed);
    s->add_option("--workers", cfg.workers, "worker threads (0 = all)");
    s->add_option("--bp-max-iter", cfg.bp_max_iter);
    s->add_option("--coord-box", cfg.coord_box);
    s->add_option("--out", cfg.out_path, "CSV output path (manifest written alongside)");
  }
  std::string decoder_name = "coset";
  fer->add_option("--decoder", decoder_name, "iterative|coset")
      ->check(CLI::IsMember({"iterative", "coset"}));

  // outage pol
  auto* outage = app.add_subcommand("outage", "reference limits");
  auto* pol = outage->add_subcommand("pol", "Poltyrev outage limit curve");
  pol->add_option("--n", cfg.outage_blocks, "fading blocks")->required();
  pol->add_option("--snr-db-start", cfg.snr_db_start);
  pol->add_option("--snr-db-stop", cfg.snr_db_stop);
  pol->add_option("--snr-db-step", cfg.snr_db_step);
  pol->add_option("--trials", cfg.outage_trials);
  pol->add_option("--seed", cfg.seed);
  pol->add_option("--workers", cfg.workers);
  pol->add_option("--out", cfg.out_path, "CSV output path");

  // mindist
  auto* mindist = app.add_subcommand("mindist", "minimum product distance of sigma(O_K)");
  double radius = 20.0;
  mindist->add_option("--field", cfg.field_spec)->required();
  mindist->add_option("--radius", radius, "coordinate enumeration radius");

  // decode
  auto* decode = app.add_subcommand("decode", "decode a single received frame");
  std::string y_path, h_list, alg = "coset";
  double sigma = 0.0;
  decode->set_help_flag("--help", "print help");  // frees -h for the fading list
  decode->add_option("--alg", alg, "iterative|coset")->check(CLI::IsMember({"iterative", "coset"}));
  decode->add_option("--field", cfg.field_spec);
  add_code_options(decode, cfg, gen_spec);
  decode->add_option("--y", y_path, "received vector file (whitespace-separated)")->required();
  decode->add_option("--h", h_list, "fading gains, comma-separated")->required();
  decode->add_option("--sigma", sigma, "noise std (iterative LLRs need it)");

  CLI11_PARSE(app, argc, argv);

  try {
    parse_gen_spec(gen_spec, cfg);
    if (fer->parsed() && fer->count("--decoder"))
      cfg.decoder = decoder_name == "iterative" ? DecoderKind::iterative : DecoderKind::coset;
    if (decode->parsed())
      cfg.decoder = alg == "iterative" ? DecoderKind::iterative : DecoderKind::coset;

    if (info->parsed()) {
      cmd_field_info(spec_arg, info_prime, catalog_path);
    } else if (lbuild->parsed()) {
      cmd_lattice_build(cfg, out_prefix);
    } else if (fer->parsed()) {
      FerCurve curve = run_fer_sweep(cfg);
      std::fputs(fer_csv(curve).c_str(), stdout);
    } else if (cmp->parsed()) {
      CompareCurve curve = compare_decoders(cfg);
      std::fputs(compare_csv(curve).c_str(), stdout);
    } else if (pol->parsed()) {
      FerCurve curve = run_outage(cfg);
      std::fputs(outage_csv(curve).c_str(), stdout);
    } else if (mindist->parsed()) {
      cmd_mindist(cfg.field_spec, radius);
    } else if (decode->parsed()) {
      cmd_decode(cfg, y_path, h_list, sigma);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return 0;
}

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "amenlab/groupoid.hpp"
#include "amenlab/lp_mean.hpp"

using namespace amenlab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 2;
constexpr int kExitWindow = 3;
constexpr int kExitSize = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

struct Run {
  json config;
  std::string config_hash;
  std::filesystem::path out_dir;
  uint64_t seed = 1;
  int threads = 1;
  double tolerance = 1e-9;

  json report_header() const {
    json h;
    h["version"] = kVersion;
    h["config_hash"] = config_hash;
    h["seed"] = seed;
    h["threads"] = threads;
    return h;
  }
  void write_text(const std::string& name, const std::string& body) const {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir / name, std::ios::binary);
    f << body;
    if (!f) throw std::runtime_error("cannot write " + name);
  }
  void write_json(const std::string& name, const json& j) const {
    write_text(name, j.dump(2) + "\n");
  }
};

GroupPtr load_group(const json& cfg) {
  if (!cfg.contains("group")) throw ConfigError("missing group descriptor");
  return group_from_json(cfg.at("group"));
}

SpacePtr load_space(const json& cfg, const GroupPtr& G) {
  if (!cfg.contains("space")) return Space::single_point(G);
  json sj = cfg.at("space");
  if (!sj.contains("group")) sj["group"] = group_to_json(G);
  return space_from_json(sj);
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i];
  os << "]";
  return os.str();
}

int cmd_defect(Run& run) {
  const json& cfg = run.config;
  auto G = load_group(cfg);
  auto sp = load_space(cfg, G);
  auto gens = G->generators();
  if (gens.empty()) throw ConfigError("empty generator list");
  std::string mean_kind = cfg.value("mean", "folner");
  int n_min = cfg.value("n_min", 1);
  int n_max = cfg.value("n_max", 8);
  if (n_min < 1 || n_max < n_min) throw ConfigError("bad n range");

  std::ostringstream csv;
  csv << "n,generator,defect\n";
  json cert = run.report_header();
  cert["command"] = "defect";
  cert["mean"] = mean_kind;
  json rows = json::array();
  for (int n = n_min; n <= n_max; ++n) {
    MeanCandidate m = mean_kind == "prefix"
                          ? boundary_prefix_mean(G->rank(), n)
                          : folner_mean(G, n, sp);
    auto rep = defect(m, gens);
    for (const auto& [g, d] : rep.per_generator) {
      char line[128];
      std::snprintf(line, sizeof(line), "%.17g", d);
      csv << n << "," << format_word(g) << "," << line << "\n";
      json row;
      row["n"] = n;
      row["generator"] = g;
      row["defect"] = d;
      rows.push_back(std::move(row));
    }
  }
  cert["rows"] = std::move(rows);
  run.write_text("defect.csv", csv.str());
  run.write_json("defect_certificate.json", cert);
  return 0;
}

int cmd_lp_search(Run& run) {
  const json& cfg = run.config;
  auto G = load_group(cfg);
  auto sp = load_space(cfg, G);
  auto gens = G->generators();
  if (gens.empty()) throw ConfigError("empty generator list");
  int radius = cfg.value("radius", 1);
  int depth = cfg.value("depth", 0);
  int max_vars = cfg.value("max_variables", 20000);
  auto window = G->ball(radius);

  auto res = lp_optimal_mean(sp, window, gens, depth, max_vars);
  if (std::abs(res.optimum - res.recomputed_defect) > 1e-8)
    throw std::runtime_error("LP optimum and recomputed defect disagree");
  json cert = run.report_header();
  cert["command"] = "lp-search";
  cert["radius"] = radius;
  cert["window_size"] = window.size();
  cert["optimum"] = res.optimum;
  cert["recomputed_defect"] = res.recomputed_defect;
  cert["iterations"] = res.iterations;
  if (cfg.value("exact", false)) {
    auto ex = lp_optimal_mean_exact(sp, window, gens, depth, max_vars);
    cert["exact"] = ex.exact;
  }
  json mean = json::array();
  for (const auto& row : res.m.weights) mean.push_back(row);
  cert["mean_rows"] = std::move(mean);
  run.write_json("lp_certificate.json", cert);
  return 0;
}

int cmd_pipeline(Run& run) {
  const json& cfg = run.config;
  auto G = load_group(cfg);
  auto sp = load_space(cfg, G);
  if (G->generators().empty()) throw ConfigError("empty generator list");

  std::string stage = "module";
  json rep = run.report_header();
  rep["command"] = "pipeline";
  try {
    BimoduleSpec M = cfg.contains("module")
                         ? bimodule_from_json(cfg.at("module"))
                         : random_bimodule(sp, cfg.value("block", 2),
                                           (uint32_t)run.seed);
    auto mv = M.validate((uint32_t)run.seed);
    rep["module"] = {{"dim", M.dim}, {"violation", mv.max()}};
    if (mv.max() > run.tolerance) throw std::runtime_error("bimodule axioms fail");

    stage = "derivation";
    DerivationSpec D;
    if (cfg.contains("derivation")) {
      D = derivation_from_json(cfg.at("derivation"));
    } else {
      std::mt19937 rng((uint32_t)run.seed + 1);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      Vector v(M.dim);
      for (int i = 0; i < M.dim; ++i) v(i) = Complex(unif(rng), unif(rng));
      D = ad(v, M);
    }
    if (D.dim != M.dim) throw ConfigError("derivation dimension mismatch");
    double ddef = derivation_defect(D, M, cfg.value("samples", 40),
                                    (uint32_t)run.seed + 2);
    rep["derivation"] = {{"defect", ddef}};

    stage = "geometric-gate";
    double gdef = geometric_defect(M, Side::Right, NormKind::L1,
                                   cfg.value("samples", 40), (uint32_t)run.seed + 3);
    rep["geometric_defect"] = gdef;
    if (gdef > run.tolerance)
      throw std::runtime_error("module is not right-CX-l1-geometric");

    stage = "reduce";
    auto red = reduce_to_cx_equivariant(D, M);
    rep["reduce"] = {{"lstsq_residual", red.lstsq_residual},
                     {"equivariance_defect", red.equivariance_defect}};

    stage = "mean";
    int n = cfg.value("mean_n", G->kind() == GroupKind::Finite ? 1 : 16);
    auto mean = mean_to_a0(folner_mean(G, n, sp));
    stage = "solve-inner";
    auto inner = solve_inner_via_mean(red.reduced, M, mean);
    rep["inner"] = {{"residual", inner.residual},
                    {"mean_defect", inner.mean_defect},
                    {"C", inner.C}};
    double central = cx_centrality_defect(red.reduced, M);
    rep["cx_centrality_defect"] = central;

    stage = "expectation";
    std::vector<Word> W{G->identity()};
    for (const auto& g : G->generators()) W.push_back(g);
    Kernel k;
    for (const auto& h : W)
      k[h] = Eigen::VectorXd::Constant(sp->num_points(), 1.0 / (double)W.size());
    auto P = symmetrize(expectation_from_kernel(k, sp, W));
    auto ma = MeasuredAction::uniform(sp);
    auto erep = equivariance_defect(P, ma, G->generators());
    rep["expectation"] = {{"equivariance", erep.equivariance},
                          {"unitality", erep.unitality},
                          {"linearity", erep.linearity}};

    stage = "positivize";
    auto prep = positivize(k, cfg.value("epsilon", 0.01), sp, G->generators());
    rep["positivize"] = {{"input_residual", prep.input_residual},
                         {"output_residual", prep.output_residual},
                         {"bound", prep.bound},
                         {"bounded", prep.bounded}};

    double threshold = cfg.value("residual_threshold", 1e-8);
    double mean_slack = cfg.value("mean_slack", 2.0);
    bool ok = ddef <= threshold && red.lstsq_residual <= threshold &&
              red.equivariance_defect <= threshold &&
              inner.residual <= mean_slack * inner.mean_defect + threshold &&
              central <= threshold && prep.bounded;
    rep["ok"] = ok;
    run.write_json("pipeline_report.json", rep);
    return ok ? 0 : 1;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::length_error&) {
    throw;
  } catch (const std::exception& e) {
    throw std::runtime_error("stage " + stage + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amenlab batch runner"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  double tolerance = 1e-9;
  app.add_option("--config", config_path, "config document path")->required();
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "override config seed");
  app.add_option("--threads", threads, "worker threads (recorded)");
  app.add_option("--tolerance", tolerance, "pipeline tolerance");
  auto* c_defect = app.add_subcommand("defect", "mean defect sweep");
  auto* c_lp = app.add_subcommand("lp-search", "LP-optimal mean search");
  auto* c_pipe = app.add_subcommand("pipeline", "derivation pipeline verification");
  for (auto* sub : {c_defect, c_lp, c_pipe}) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config: " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    Run run;
    try {
      run.config = json::parse(buf.str());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    run.config_hash = fnv1a_hex(buf.str());
    run.out_dir = out_dir;
    run.seed = seed_set ? seed : run.config.value("seed", (uint64_t)1);
    run.threads = threads;
    run.tolerance = tolerance;
    if (run.tolerance <= 0.0) throw ConfigError("tolerance must be positive");
    try {
      if (c_defect->parsed()) return cmd_defect(run);
      if (c_lp->parsed()) return cmd_lp_search(run);
      return cmd_pipeline(run);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config schema error: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const SizeLimitError& e) {
    std::fprintf(stderr, "size limit: %s\n", e.what());
    return kExitSize;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "window overflow: %s\n", e.what());
    return kExitWindow;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

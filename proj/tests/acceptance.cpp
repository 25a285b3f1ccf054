// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Criterion 9 needs the CLI binary path as argv[1].

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amenlab/affine.hpp"
#include "amenlab/bimodule.hpp"
#include "amenlab/groupoid.hpp"
#include "amenlab/lp_mean.hpp"
#include "amenlab/mean.hpp"

using namespace amenlab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int num, const std::string& label, double budget_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count();
  if (budget_s > 0 && dt > budget_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("%s  criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", num,
              label.c_str(), dt, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

SpacePtr four_point_f2() {
  auto G = Group::free_group(2);
  return Space::finite_points(
      G, {{1, 2, 3, 0}, {3, 0, 1, 2}, {1, 0, 2, 3}, {1, 0, 2, 3}});
}

SpacePtr three_points_z() {
  auto G = Group::free_abelian(1);
  return Space::finite_points(G, {{1, 2, 0}, {2, 0, 1}});
}

A0Element random_a0(const SpacePtr& sp, const std::vector<Word>& words,
                    std::mt19937& rng, int support) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  A0Element a(sp);
  for (int k = 0; k < support; ++k) {
    const Word& g = words[rng() % words.size()];
    std::vector<Complex> vals(sp->num_points());
    for (auto& v : vals) v = Complex(unif(rng), unif(rng));
    a.set(g, CXFunction(sp, 0, vals));
  }
  return a;
}

Vector random_vector(int d, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(unif(rng), unif(rng));
  return v;
}

A0Element convex_element(const SpacePtr& sp, const std::vector<Word>& words,
                         uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<double> w(words.size());
  double total = 0.0;
  for (auto& x : w) total += (x = 0.1 + (rng() % 1000) / 1000.0);
  A0Element f(sp);
  for (size_t i = 0; i < words.size(); ++i)
    f.set(words[i], CXFunction::constant(sp, w[i] / total));
  return f;
}

bool c1_algebra_laws(std::string& detail) {
  auto sp = four_point_f2();
  auto ball = sp->group()->ball(2);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = random_a0(sp, ball, rng, 4);
    auto b = random_a0(sp, ball, rng, 4);
    auto c = random_a0(sp, ball, rng, 3);
    if (a0_norm(convolve(a, b)) > a0_norm(a) * a0_norm(b) + 1e-9) {
      detail = "submultiplicativity violated";
      return false;
    }
    if (a0_distance(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) >
        1e-10) {
      detail = "associativity violated";
      return false;
    }
    const Word& g = ball[rng() % ball.size()];
    const Word& h = ball[rng() % ball.size()];
    auto dg = A0Element::delta(sp, g);
    auto dh = A0Element::delta(sp, h);
    if (a0_distance(convolve(dg, dh),
                    A0Element::delta(sp, sp->group()->multiply(g, h))) != 0.0) {
      detail = "delta product not exact";
      return false;
    }
    std::vector<Complex> vals(sp->num_points());
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (auto& v : vals) v = Complex(unif(rng), unif(rng));
    CXFunction p(sp, 0, vals);
    auto conj = convolve(convolve(dg, A0Element::embed(p)),
                         A0Element::delta(sp, sp->group()->inverse(g)));
    if (a0_distance(conj, A0Element::embed(p.translated(g))) > 1e-14) {
      detail = "delta conjugation not exact";
      return false;
    }
  }
  return true;
}

bool c2_folner_defects(std::string& detail) {
  for (int rank : {1, 2}) {
    auto G = Group::free_abelian(rank);
    for (int n = 1; n <= 64; ++n) {
      auto rep = defect(folner_mean(G, n), G->generators());
      for (const auto& [g, d] : rep.per_generator)
        if (std::abs(d - 2.0 / n) > 1e-12) {
          detail = "rank " + std::to_string(rank) + " n " + std::to_string(n);
          return false;
        }
    }
  }
  return true;
}

bool c3_prefix_defects(std::string& detail) {
  auto gens = Group::free_group(2)->generators();
  for (int n = 1; n <= 16; ++n) {
    auto rep = defect(boundary_prefix_mean(2, n), gens);
    for (const auto& [g, d] : rep.per_generator)
      if (std::abs(d - 2.0 / n) > 1e-12) {
        detail = "n " + std::to_string(n);
        return false;
      }
  }
  return true;
}

bool c4_lp_contrast(std::string& detail) {
  auto G = Group::free_group(2);
  auto pt = Space::single_point(G);
  const std::vector<std::string> golden{"6/5", "18/17", "54/53"};
  const std::vector<double> golden_val{6.0 / 5, 18.0 / 17, 54.0 / 53};
  for (int r = 1; r <= 3; ++r) {
    auto res = lp_optimal_mean(pt, G->ball(r), G->generators());
    if (!(res.optimum >= 0.1) ||
        std::abs(res.optimum - golden_val[r - 1]) > 1e-8 ||
        std::abs(res.optimum - res.recomputed_defect) > 1e-8) {
      detail = "r " + std::to_string(r) + " optimum " + std::to_string(res.optimum);
      return false;
    }
    // rational oracle re-pins the golden where it is cheap; r=3 stays frozen
    if (r <= 2) {
      auto ex = lp_optimal_mean_exact(pt, G->ball(r), G->generators());
      if (ex.exact != golden[r - 1]) {
        detail = "exact " + ex.exact + " at r " + std::to_string(r);
        return false;
      }
    }
  }
  return true;
}

bool c5_fixed_point(std::string& detail) {
  std::vector<SpacePtr> spaces{three_points_z(),
                               Space::group_on_itself(Group::symmetric3()),
                               Space::group_on_itself(Group::cyclic(5)),
                               Space::single_point(Group::free_group(2)),
                               four_point_f2()};
  uint32_t seed = 500;
  double worst_transport = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& sp = spaces[i % spaces.size()];
    auto G = sp->group();
    auto sys = random_affine_system(sp, 1 + (i % 3), seed++);
    std::vector<Word> words{G->identity()};
    for (const auto& g : G->generators()) words.push_back(g);
    auto f = convex_element(sp, words, seed++);
    Vector c0 = random_vector(sys.dim, seed++);
    for (const auto& g : G->generators())
      worst_transport =
          std::max(worst_transport, transport_identity_defect(f, g, sys, c0));
  }
  if (worst_transport > 1e-9) {
    detail = "transport defect " + std::to_string(worst_transport);
    return false;
  }

  // exact means on finite groups: residual below 1e-10
  for (const auto& sp : {Space::group_on_itself(Group::symmetric3()),
                         Space::group_on_itself(Group::cyclic(5))}) {
    auto G = sp->group();
    auto f = mean_to_a0(folner_mean(G, 1, sp));
    auto sys = random_affine_system(sp, 2, seed++);
    Vector u = orbit_average(f, sys, random_vector(sys.dim, seed++));
    double r = fixed_point_residual(u, sys, G->generators());
    if (r > 1e-10) {
      detail = "exact-mean residual " + std::to_string(r);
      return false;
    }
  }

  // prefix means on the boundary carrier: C stable between n=8 and n=16
  auto bd = Space::boundary(Group::free_group(2));
  CXFunction q = Complex(0.4, 0.0) * CXFunction::cylinder_indicator(bd, {1}) -
                 Complex(0.25, 0.0) * CXFunction::cylinder_indicator(bd, {-2});
  auto r8 = prefix_orbit_residual(q, 8);
  auto r16 = prefix_orbit_residual(q, 16);
  if (!(r8.C > 0.0) || std::abs(r8.C - r16.C) > 0.2 * r8.C) {
    detail = "C drift: " + std::to_string(r8.C) + " vs " + std::to_string(r16.C);
    return false;
  }
  return true;
}

bool c6_pipeline(std::string& detail) {
  std::vector<SpacePtr> spaces{Space::group_on_itself(Group::symmetric3()),
                               Space::group_on_itself(Group::cyclic(4)),
                               three_points_z()};
  uint32_t seed = 600;
  for (int i = 0; i < 50; ++i) {
    const auto& sp = spaces[i % spaces.size()];
    auto G = sp->group();
    auto M = random_bimodule(sp, 2, seed++);
    if (geometric_defect(M, Side::Right, NormKind::L1, 20, seed) > 1e-12) {
      detail = "geometric gate failed";
      return false;
    }
    Vector w = random_vector(M.dim, seed++);
    auto D = ad(w, M);
    auto red = reduce_to_cx_equivariant(D, M);
    int n = G->kind() == GroupKind::Finite ? 1 : 24;
    auto inner = solve_inner_via_mean(red.reduced, M, mean_to_a0(folner_mean(G, n, sp)));
    double bound = inner.C * inner.mean_defect + 1e-8;
    if (inner.residual > bound && inner.residual > 1e-8) {
      detail = "residual " + std::to_string(inner.residual) + " bound " +
               std::to_string(bound);
      return false;
    }
    // recovered map agrees with ad_w up to the same bound
    auto N = M.dual();
    Vector tau_total = inner.tau + red.tau0;
    for (const auto& g : G->generators()) {
      double dev = ((N.left_word(g) - N.right_word(g)) * (tau_total - w)).norm();
      if (dev > bound + 1e-8) {
        detail = "map deviation " + std::to_string(dev);
        return false;
      }
    }
    if (cx_centrality_defect(red.reduced, M) > 1e-9) {
      detail = "centrality defect";
      return false;
    }
  }
  return true;
}

bool c7_groupoid(std::string& detail) {
  // star/ast contractivity and associativity
  std::mt19937 rng(700);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto fill = [&](GammaXFunction& xi) {
    for (int i = 0; i < xi.values.rows(); ++i)
      for (int x = 0; x < xi.values.cols(); ++x)
        xi.values(i, x) = Complex(unif(rng), unif(rng));
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto G = Group::cyclic(5);
    auto sp = Space::group_on_itself(G);
    std::vector<Word> W;
    for (int i = 0; i < 5; ++i) W.push_back({i});
    auto xi = GammaXFunction::zero(sp, W);
    fill(xi);
    std::mt19937 arng(800 + trial);
    A0Element a1(sp), a2(sp);
    for (const auto& g : W) {
      std::vector<Complex> v1(5), v2(5);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int x = 0; x < 5; ++x) {
        v1[x] = Complex(u(arng), u(arng));
        v2[x] = Complex(u(arng), u(arng));
      }
      a1.set(g, CXFunction(sp, 0, v1));
      a2.set(g, CXFunction(sp, 0, v2));
    }
    double bound = a0_norm(a1) * xi.sup_norm();
    if (star_act(a1, xi).sup_norm() > bound + 1e-10 ||
        ast_act(a1, xi).sup_norm() > bound + 1e-10) {
      detail = "contractivity violated";
      return false;
    }
    auto lhs = ast_act(convolve(a1, a2), xi);
    auto rhs = ast_act(a1, ast_act(a2, xi));
    double dev = (lhs.values - rhs.values).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
      detail = "star associativity " + std::to_string(dev);
      return false;
    }
  }

  // ev_e construction is unital exactly
  {
    auto G = Group::cyclic(4);
    auto sp = Space::group_on_itself(G);
    std::vector<Word> W;
    for (int i = 0; i < 4; ++i) W.push_back({i});
    auto P = ev_e(sp, W);
    auto rep = equivariance_defect(P, MeasuredAction::uniform(sp), G->generators());
    if (rep.unitality != 0.0) {
      detail = "ev_e unitality " + std::to_string(rep.unitality);
      return false;
    }
  }

  // positivize transfer constant on the cyclic family
  const double kGoldenTransfer = 0.802149352713;
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    auto G = Group::cyclic(n);
    auto sp = Space::group_on_itself(G);
    Kernel k;
    Word e = G->identity();
    Word g1 = e, g2 = e;
    g1[0] = 1 % n;
    g2[0] = 2 % n;
    Eigen::VectorXd a(n), b(n), c(n);
    for (int x = 0; x < n; ++x) {
      a(x) = 0.6 + 0.1 * std::cos(2 * M_PI * x / n);
      b(x) = -0.2 + 0.05 * std::sin(2 * M_PI * x / n);
      c(x) = 0.3;
    }
    k[e] = a;
    k[g1] = b;
    k[g2] = c;
    auto rep = positivize(k, 0.05, sp, G->generators());
    if (!rep.bounded) {
      detail = "transfer bound violated at n " + std::to_string(n);
      return false;
    }
    for (const auto& [h, v] : rep.output) {
      if (v.minCoeff() < 0.0) {
        detail = "negative output";
        return false;
      }
    }
    worst = std::max(worst, rep.output_residual / rep.input_residual);
  }
  if (std::abs(worst - kGoldenTransfer) > 1e-9) {
    detail = "transfer constant " + std::to_string(worst);
    return false;
  }
  return true;
}

bool c8_character_bounds(std::string& detail) {
  auto sp = four_point_f2();
  auto G = sp->group();
  auto window = G->ball(1);
  std::mt19937 rng(900);
  std::uniform_real_distribution<double> pos(1e-3, 1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    A0Element m(sp);
    std::vector<double> w(window.size());
    double s = 0.0;
    for (auto& x : w) s += (x = pos(rng));
    for (size_t i = 0; i < window.size(); ++i)
      m += Complex(w[i] / s) * A0Element::delta(sp, window[i]);
    std::vector<Complex> vals(sp->num_points());
    for (auto& v : vals) v = Complex(unif(rng), unif(rng));
    CXFunction p(sp, 0, vals);
    for (const auto& g : G->generators()) {
      auto b = character_transform_bound(m, p, g);
      if (b.lhs > b.rhs + 1e-10) {
        detail = "character bound violated";
        return false;
      }
    }
  }

  // mean-from-unit round trip: right-invariance bounded by the unit defect
  auto Z = Group::free_abelian(1);
  auto pt = Space::single_point(Z);
  for (int n : {4, 8, 16, 32}) {
    A0Element mean(pt);
    for (int j = 0; j < n; ++j)
      mean += Complex(1.0 / n) * A0Element::delta(pt, {j});
    auto e = A0Element::delta(pt, Z->identity()) - mean;
    auto v = ozawa_mean_from_unit(e, 0);
    auto shifted = l1_right_translate(Z, v, {1});
    L1Vector diff = shifted;
    for (auto& [g, z] : v) diff[g] -= z;
    double unit_defect = a0_norm(convolve(e, A0Element::delta(pt, {-1})) - e);
    if (l1_norm(diff) > unit_defect + 1e-10) {
      detail = "mean-from-unit bound violated at n " + std::to_string(n);
      return false;
    }
    // unit-from-mean round trip reproduces the convolution defect
    auto u = unit_from_mean(mean);
    if (pibar(u).sup_norm() > 1e-12) {
      detail = "unit not in ker pibar";
      return false;
    }
    double conv = a0_norm(
        convolve(A0Element::delta(pt, {1}) - A0Element::delta(pt, Z->identity()),
                 mean));
    if (std::abs(conv - 2.0 / n) > 1e-10) {
      detail = "convolution defect off at n " + std::to_string(n);
      return false;
    }
  }
  return true;
}

bool c9_cli_determinism(const std::string& cli, std::string& detail) {
  if (cli.empty()) {
    detail = "CLI path not provided";
    return false;
  }
  auto tmp = fs::temp_directory_path() / "amenlab_accept";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  {
    std::ofstream cfg(tmp / "cfg.json");
    cfg << R"({"group": {"kind": "symmetric3"}, "block": 2, "seed": 9})" << "\n";
  }
  auto run = [&](const std::string& out) {
    std::string cmd = cli + " pipeline --config " + (tmp / "cfg.json").string() +
                      " --out " + (tmp / out).string() + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  if (run("r1") != 0 || run("r2") != 0) {
    detail = "CLI run failed";
    return false;
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto b1 = slurp(tmp / "r1" / "pipeline_report.json");
  auto b2 = slurp(tmp / "r2" / "pipeline_report.json");
  if (b1.empty() || b1 != b2) {
    detail = "reports differ";
    return false;
  }
  fs::remove_all(tmp);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  criterion(1, "algebra laws on seeded random elements", 30, c1_algebra_laws);
  criterion(2, "Folner box defects are 2/n", 5, c2_folner_defects);
  criterion(3, "boundary prefix defects are 2/n", 60, c3_prefix_defects);
  criterion(4, "free-group LP optimum positive with frozen goldens", 120,
            c4_lp_contrast);
  criterion(5, "fixed-point transport and orbit averages", 0, c5_fixed_point);
  criterion(6, "derivation pipeline recovers innerness", 0, c6_pipeline);
  criterion(7, "groupoid actions, expectations, positivization", 0, c7_groupoid);
  criterion(8, "character transform inequalities", 0, c8_character_bounds);
  criterion(9, "CLI determinism", 0, [&](std::string& d) {
    return c9_cli_determinism(cli, d);
  });
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

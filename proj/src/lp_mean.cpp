#include "amenlab/lp_mean.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

#include "amenlab/simplex.hpp"

namespace amenlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct SiteTerm {
  int row_gx;    // row index of m(g.x)
  int row_x;     // row index of m(x)
  int w_h;       // window index of h, -1 if outside
  int w_gh;      // window index of g^{-1}h, -1 if outside
};

struct LPShape {
  int rows = 0;          // number of weight rows (points or depth-d cylinders)
  int W = 0;             // window size
  // per (generator, site): all h in W union gW with the two window indices
  std::vector<std::vector<std::vector<SiteTerm>>> sites;  // [gen][site][h]
  int n_m = 0, n_s = 0, n_sites = 0;
  int var_t = 0, s0 = 0, u0 = 0, v0 = 0, total = 0;
};

int window_index(const std::vector<Word>& window, const Word& w) {
  auto it = std::lower_bound(window.begin(), window.end(), w);
  if (it == window.end() || *it != w) return -1;
  return (int)(it - window.begin());
}

LPShape build_shape(const SpacePtr& space, const std::vector<Word>& window,
                    const std::vector<Word>& gens, int depth) {
  const auto& G = space->group();
  LPShape sh;
  sh.W = (int)window.size();
  sh.rows = (int)space->dim_at(depth);
  for (const auto& g : gens) {
    Word ginv = G->inverse(g);
    std::vector<std::vector<SiteTerm>> per_site;
    // evaluation sites: points, or cylinders one letter deeper than the rows
    int64_t nsites = space->is_boundary()
                         ? space->cylinder_count(depth + std::max<int>(1, (int)g.size()))
                         : space->num_points();
    for (int64_t si = 0; si < nsites; ++si) {
      int row_gx, row_x;
      if (space->is_boundary()) {
        int d = depth + std::max<int>(1, (int)g.size());
        Word x = space->cylinder_word(d, si);
        row_x = (int)space->cylinder_index(Word(x.begin(), x.begin() + depth));
        Word gx = space->act_cylinder(g, x);
        row_gx = (int)space->cylinder_index(Word(gx.begin(), gx.begin() + depth));
      } else {
        row_x = (int)si;
        row_gx = space->act_point(g, (int)si);
      }
      // h ranges over W union gW
      std::vector<Word> hs = window;
      for (const auto& w : window) hs.push_back(G->multiply(g, w));
      std::sort(hs.begin(), hs.end());
      hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
      std::vector<SiteTerm> terms;
      for (const auto& h : hs) {
        SiteTerm t;
        t.row_gx = row_gx;
        t.row_x = row_x;
        t.w_h = window_index(window, h);
        t.w_gh = window_index(window, G->multiply(ginv, h));
        if (t.w_h >= 0 || t.w_gh >= 0) terms.push_back(t);
      }
      per_site.push_back(std::move(terms));
    }
    sh.sites.push_back(std::move(per_site));
  }
  sh.n_m = sh.rows * sh.W;
  sh.n_s = 0;
  sh.n_sites = 0;
  for (const auto& per_site : sh.sites)
    for (const auto& terms : per_site) {
      sh.n_s += (int)terms.size();
      sh.n_sites += 1;
    }
  sh.var_t = sh.n_m;
  sh.s0 = sh.var_t + 1;
  sh.u0 = sh.s0 + sh.n_s;
  sh.v0 = sh.u0 + sh.n_sites;
  sh.total = sh.v0 + 2 * sh.n_s;
  return sh;
}

template <class Scalar>
LPResult<Scalar> solve_shape(const LPShape& sh, int max_variables) {
  if (sh.total > max_variables)
    throw SizeLimitError("LP size limit exceeded: " + std::to_string(sh.total) +
                                " variables");
  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  auto mvar = [&](int row, int w) { return row * sh.W + w; };
  // simplex rows: sum_w m[row][w] = 1
  for (int r = 0; r < sh.rows; ++r) {
    std::vector<Scalar> eq(sh.total, Scalar(0));
    for (int w = 0; w < sh.W; ++w) eq[mvar(r, w)] = Scalar(1);
    A.push_back(std::move(eq));
    b.push_back(Scalar(1));
  }
  int s_idx = 0, site_idx = 0, v_idx = 0;
  for (const auto& per_site : sh.sites)
    for (const auto& terms : per_site) {
      int site_s0 = s_idx;
      for (const auto& t : terms) {
        // d = m(g.x)(h) - m(x)(g^{-1}h);  s - d - v1 = 0;  s + d - v2 = 0
        std::vector<Scalar> eq1(sh.total, Scalar(0)), eq2(sh.total, Scalar(0));
        eq1[sh.s0 + s_idx] = Scalar(1);
        eq2[sh.s0 + s_idx] = Scalar(1);
        if (t.w_h >= 0) {
          eq1[mvar(t.row_gx, t.w_h)] -= Scalar(1);
          eq2[mvar(t.row_gx, t.w_h)] += Scalar(1);
        }
        if (t.w_gh >= 0) {
          eq1[mvar(t.row_x, t.w_gh)] += Scalar(1);
          eq2[mvar(t.row_x, t.w_gh)] -= Scalar(1);
        }
        eq1[sh.v0 + 2 * v_idx] = Scalar(-1);
        eq2[sh.v0 + 2 * v_idx + 1] = Scalar(-1);
        A.push_back(std::move(eq1));
        b.push_back(Scalar(0));
        A.push_back(std::move(eq2));
        b.push_back(Scalar(0));
        ++s_idx;
        ++v_idx;
      }
      // sum_h s + u = t
      std::vector<Scalar> eq(sh.total, Scalar(0));
      for (int j = site_s0; j < s_idx; ++j) eq[sh.s0 + j] = Scalar(1);
      eq[sh.u0 + site_idx] = Scalar(1);
      eq[sh.var_t] = Scalar(-1);
      A.push_back(std::move(eq));
      b.push_back(Scalar(0));
      ++site_idx;
    }
  std::vector<Scalar> c(sh.total, Scalar(0));
  c[sh.var_t] = Scalar(1);
  SimplexSolver<Scalar> solver(std::move(A), std::move(b), std::move(c));
  auto res = solver.solve();
  if (!res.optimal) throw std::runtime_error("LP solve failed");
  return res;
}

}  // namespace

LPMeanResult lp_optimal_mean(const SpacePtr& space, const std::vector<Word>& window,
                             const std::vector<Word>& gens, int depth,
                             int max_variables) {
  std::vector<Word> W = window;
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  LPShape sh = build_shape(space, W, gens, depth);
  auto res = solve_shape<double>(sh, max_variables);

  LPMeanResult out;
  out.optimum = res.objective;
  out.iterations = res.iterations;
  out.m.kind = MeanCandidate::Kind::Dense;
  out.m.space = space;
  out.m.window = W;
  out.m.depth = depth;
  out.m.weights.assign(sh.rows, std::vector<double>(sh.W, 0.0));
  for (int r = 0; r < sh.rows; ++r) {
    double s = 0.0;
    for (int w = 0; w < sh.W; ++w) {
      double v = std::max(0.0, res.x[r * sh.W + w]);
      out.m.weights[r][w] = v;
      s += v;
    }
    for (int w = 0; w < sh.W; ++w) out.m.weights[r][w] /= s;
  }
  out.recomputed_defect = defect(out.m, gens).total;
  return out;
}

ExactLPResult lp_optimal_mean_exact(const SpacePtr& space,
                                    const std::vector<Word>& window,
                                    const std::vector<Word>& gens, int depth,
                                    int max_variables) {
  std::vector<Word> W = window;
  std::sort(W.begin(), W.end());
  W.erase(std::unique(W.begin(), W.end()), W.end());
  LPShape sh = build_shape(space, W, gens, depth);
  auto res = solve_shape<Rational>(sh, max_variables);
  ExactLPResult out;
  out.optimum = res.objective.template convert_to<double>();
  std::ostringstream os;
  os << res.objective;
  out.exact = os.str();
  out.iterations = res.iterations;
  return out;
}

}  // namespace amenlab

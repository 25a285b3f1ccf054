#include "amenlab/mean.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace amenlab {

namespace {

int find_index(const std::vector<Word>& window, const Word& w) {
  auto it = std::lower_bound(window.begin(), window.end(), w);
  if (it == window.end() || *it != w) return -1;
  return (int)(it - window.begin());
}

}  // namespace

void MeanCandidate::validate(double tol) const {
  if (!space) throw std::invalid_argument("mean has no space");
  if (!std::is_sorted(window.begin(), window.end()))
    throw std::invalid_argument("window not sorted");
  if (kind == Kind::PrefixLazy) {
    if (!space->is_boundary() || prefix_n < 1)
      throw std::invalid_argument("prefix mean needs a boundary space and n >= 1");
    return;
  }
  int64_t rows = space->dim_at(depth);
  if ((int64_t)weights.size() != rows)
    throw std::invalid_argument("wrong number of weight rows");
  for (const auto& row : weights) {
    if (row.size() != window.size()) throw std::invalid_argument("row size mismatch");
    double s = 0.0;
    for (double v : row) {
      if (v < -tol) throw std::invalid_argument("negative weight");
      s += v;
    }
    if (std::abs(s - 1.0) > tol) throw std::invalid_argument("row does not sum to 1");
  }
}

std::vector<std::pair<Word, double>> MeanCandidate::row_at(const Word& x) const {
  if (!space->is_boundary()) throw std::logic_error("row_at needs a boundary space");
  std::vector<std::pair<Word, double>> out;
  if (kind == Kind::PrefixLazy) {
    if ((int)x.size() < prefix_n)
      throw std::invalid_argument("cylinder shallower than the prefix mean depth");
    for (int j = 1; j <= prefix_n; ++j)
      out.emplace_back(Word(x.begin(), x.begin() + j), 1.0 / prefix_n);
    return out;
  }
  if ((int)x.size() < depth)
    throw std::invalid_argument("cylinder shallower than the mean depth");
  Word prefix(x.begin(), x.begin() + depth);
  const auto& row = weights[space->cylinder_index(prefix)];
  for (size_t i = 0; i < window.size(); ++i)
    if (row[i] != 0.0) out.emplace_back(window[i], row[i]);
  return out;
}

namespace {

// l1 distance between two sparse vectors given as sorted (Word, weight) maps
double sparse_l1(std::vector<std::pair<Word, double>> a,
                 std::vector<std::pair<Word, double>> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double s = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      s += std::abs(a[i++].second);
    else if (i == a.size() || b[j].first < a[i].first)
      s += std::abs(b[j++].second);
    else {
      s += std::abs(a[i++].second - b[j++].second);
      }
  }
  return s;
}

double dense_finite_entry(const MeanCandidate& m, const Word& g) {
  const auto& sp = m.space;
  const auto& G = sp->group();
  Word ginv = G->inverse(g);
  const int W = (int)m.window.size();
  // shift[j] = index of g^{-1} window[j] in the window, escapes[j] marks
  // window elements whose g-translate leaves the window
  std::vector<int> shift(W);
  std::vector<char> escapes(W);
  for (int j = 0; j < W; ++j) {
    shift[j] = find_index(m.window, G->multiply(ginv, m.window[j]));
    escapes[j] = find_index(m.window, G->multiply(g, m.window[j])) < 0;
  }
  double worst = 0.0;
  for (int x = 0; x < sp->num_points(); ++x) {
    const auto& rx = m.weights[x];
    const auto& rgx = m.weights[sp->act_point(g, x)];
    double s = 0.0;
    for (int j = 0; j < W; ++j) {
      double b = shift[j] >= 0 ? rx[shift[j]] : 0.0;
      s += std::abs(rgx[j] - b);
      if (escapes[j]) s += std::abs(rx[j]);
    }
    worst = std::max(worst, s);
  }
  return worst;
}

double dense_boundary_entry(const MeanCandidate& m, const Word& g) {
  const auto& sp = m.space;
  const auto& G = sp->group();
  int L = std::max<int>(1, (int)g.size());
  int d = m.depth + L;
  double worst = 0.0;
  Word ginv = G->inverse(g);
  for (int64_t i = 0; i < sp->cylinder_count(d); ++i) {
    Word x = sp->cylinder_word(d, i);
    auto mx = m.row_at(x);
    auto mgx = m.row_at(sp->act_cylinder(g, x));
    for (auto& [h, w] : mgx) h = G->multiply(ginv, h);
    worst = std::max(worst, sparse_l1(std::move(mx), std::move(mgx)));
  }
  return worst;
}

// Exhaustive sweep over depth-(n+1) cylinders for the prefix mean, one
// generator letter at a time.  Along the DFS path x_1..x_j the translated
// supports are the words s.p_j (p_j the length-j prefix); within each of the
// two compared supports the word lengths are pairwise distinct, so a
// per-length slot per list suffices and the match count updates in O(1) per
// step.  The distance at a leaf is 2*(n - matches)/n since all weights are
// 1/n and each support has exactly n distinct members.
class PrefixDefectSweep {
public:
  PrefixDefectSweep(int rank, int n) : k_(rank), n_(n) {
    if (rank > 4 || n > 18) throw std::length_error("prefix window overflow");
    const int L = 2 * k_;
    for (int s = 0; s < L; ++s) {
      slotA_[s].assign(n_ + 3, kEmpty);
      slotB_[s].assign(n_ + 3, kEmpty);
      cnt_[s] = 0;
      worst_[s] = 0.0;
    }
  }

  // letter index t in 0..2k-1, inverse flips the low bit
  std::vector<double> run() {
    const int L = 2 * k_;
    pbits_.assign(n_ + 2, 0);
    path_.assign(n_ + 2, 0);
    for (int t = 0; t < L; ++t) descend(1, t);
    std::vector<double> out(L);
    for (int s = 0; s < L; ++s) out[s] = worst_[s];
    return out;
  }

private:
  static constexpr uint64_t kEmpty = ~0ull;
  struct Undo {
    int8_t list;  // 0 = A, 1 = B
    int8_t len;
    int8_t dcnt;
  };

  uint64_t key(int len, uint64_t bits) const { return ((uint64_t)len << 58) | bits; }

  void insert(int s, int list, int len, uint64_t k, Undo* undo, int* nundo) {
    auto& mine = list == 0 ? slotA_[s] : slotB_[s];
    auto& other = list == 0 ? slotB_[s] : slotA_[s];
    mine[len] = k;
    int d = (other[len] == k) ? 1 : 0;
    cnt_[s] += d;
    undo[(*nundo)++] = {(int8_t)list, (int8_t)len, (int8_t)d};
  }

  void descend(int j, int t) {
    path_[j] = t;
    pbits_[j] = pbits_[j - 1] | ((uint64_t)t << (3 * (j - 1)));
    const int L = 2 * k_;
    Undo undo[3 * 8];
    int nundo = 0;
    int who[8];
    for (int s = 0; s < L; ++s) {
      if (j == 1) cancel_[s] = (t == (s ^ 1));
      int len;
      uint64_t bits;
      if (!cancel_[s]) {
        len = j + 1;
        bits = (uint64_t)s | (pbits_[j] << 3);
      } else {
        len = j - 1;
        bits = pbits_[j] >> 3;
      }
      uint64_t K = key(len, bits);
      int before = nundo;
      if (j <= n_) insert(s, 0, len, K, undo, &nundo);
      bool inB = cancel_[s] ? (j >= 2 && j <= n_ + 1) : (j <= n_ - 1);
      if (inB) insert(s, 1, len, K, undo, &nundo);
      if (j == 1 && !cancel_[s]) insert(s, 1, 1, key(1, (uint64_t)s), undo, &nundo);
      who[s] = nundo - before;
    }
    if (j == n_ + 1) {
      for (int s = 0; s < L; ++s)
        worst_[s] = std::max(worst_[s], 2.0 * (n_ - cnt_[s]) / n_);
    } else {
      for (int nt = 0; nt < L; ++nt)
        if (nt != (t ^ 1)) descend(j + 1, nt);
    }
    // unwind in reverse
    int idx = nundo;
    for (int s = L - 1; s >= 0; --s)
      for (int r = 0; r < who[s]; ++r) {
        const Undo& u = undo[--idx];
        cnt_[s] -= u.dcnt;
        (u.list == 0 ? slotA_[s] : slotB_[s])[u.len] = kEmpty;
      }
  }

  int k_, n_;
  std::vector<uint64_t> pbits_;
  std::vector<int> path_;
  std::vector<uint64_t> slotA_[8], slotB_[8];
  bool cancel_[8] = {};
  int cnt_[8] = {};
  double worst_[8] = {};
};

}  // namespace

DefectReport defect(const MeanCandidate& m, const std::vector<Word>& gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  m.validate();
  auto start = std::chrono::steady_clock::now();
  DefectReport rep;
  if (m.kind == MeanCandidate::Kind::PrefixLazy) {
    const auto& G = m.space->group();
    for (const auto& g : gens)
      if (g.size() != 1)
        throw std::invalid_argument("prefix-mean defect expects single-letter generators");
    PrefixDefectSweep sweep(G->rank(), m.prefix_n);
    auto per_letter = sweep.run();
    for (const auto& g : gens) {
      int t = 2 * (std::abs(g[0]) - 1) + (g[0] < 0 ? 1 : 0);
      rep.per_generator.emplace_back(g, per_letter[t]);
    }
    rep.window_description =
        "prefixes of length 1.." + std::to_string(m.prefix_n) + " in F" +
        std::to_string(G->rank());
  } else if (m.space->is_boundary()) {
    for (const auto& g : gens)
      rep.per_generator.emplace_back(g, dense_boundary_entry(m, g));
    rep.window_description = "dense cylinder mean, depth " + std::to_string(m.depth) +
                             ", window size " + std::to_string(m.window.size());
  } else {
    for (const auto& g : gens)
      rep.per_generator.emplace_back(g, dense_finite_entry(m, g));
    rep.window_description = "window size " + std::to_string(m.window.size()) + " on " +
                             std::to_string(m.space->num_points()) + " points";
  }
  for (const auto& [g, v] : rep.per_generator) rep.total = std::max(rep.total, v);
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

MeanCandidate folner_mean(const GroupPtr& G, int n, SpacePtr space) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!space) space = Space::single_point(G);
  if (!same_group(space->group(), G)) throw std::invalid_argument("space group mismatch");
  MeanCandidate m;
  m.kind = MeanCandidate::Kind::Dense;
  m.space = space;
  if (G->is_finite()) {
    for (int i = 0; i < G->order(); ++i) m.window.push_back({(int32_t)i});
  } else if (G->kind() == GroupKind::FreeAbelian) {
    // box [0,n)^d
    const int d = G->rank();
    Word cur(d, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == d) {
        m.window.push_back(cur);
        return;
      }
      for (int v = 0; v < n; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
      cur[i] = 0;
    };
    rec(0);
  } else {
    throw std::invalid_argument("no Folner sets in a nonabelian free group");
  }
  std::sort(m.window.begin(), m.window.end());
  std::vector<double> row(m.window.size(), 1.0 / m.window.size());
  m.weights.assign(space->num_points(), row);
  return m;
}

MeanCandidate boundary_prefix_mean(int rank, int n) {
  if (rank < 2 || n < 1) throw std::invalid_argument("need rank >= 2 and n >= 1");
  MeanCandidate m;
  m.kind = MeanCandidate::Kind::PrefixLazy;
  m.space = Space::boundary(Group::free_group(rank));
  m.prefix_n = n;
  m.depth = n;
  // the window is ball(n) minus the identity; materializing it at large n
  // costs gigabytes, so it stays implicit unless small
  if (n <= 10) {
    auto ball = m.space->group()->ball(n);
    for (auto& w : ball)
      if (!w.empty()) m.window.push_back(std::move(w));
  }
  return m;
}

MeanCandidate boundary_prefix_mean_dense(int rank, int n) {
  MeanCandidate lazy = boundary_prefix_mean(rank, n);
  MeanCandidate m;
  m.kind = MeanCandidate::Kind::Dense;
  m.space = lazy.space;
  m.window = lazy.window;
  m.depth = n;
  int64_t rows = m.space->cylinder_count(n);
  m.weights.assign(rows, std::vector<double>(m.window.size(), 0.0));
  for (int64_t i = 0; i < rows; ++i) {
    Word x = m.space->cylinder_word(n, i);
    for (int j = 1; j <= n; ++j) {
      int idx = find_index(m.window, Word(x.begin(), x.begin() + j));
      m.weights[i][idx] = 1.0 / n;
    }
  }
  return m;
}

A0Element mean_to_a0(const MeanCandidate& m) {
  m.validate();
  const auto& sp = m.space;
  std::map<Word, CXFunction> coeff;
  if (m.kind == MeanCandidate::Kind::PrefixLazy) {
    // coefficient at w is (1/n) * indicator of the cylinder of w
    for (const auto& w : m.window)
      coeff.emplace(w, Complex(1.0 / m.prefix_n) *
                           CXFunction::cylinder_indicator(sp, w));
  } else if (sp->is_boundary()) {
    for (size_t j = 0; j < m.window.size(); ++j) {
      std::vector<Complex> vals(sp->cylinder_count(m.depth));
      for (int64_t i = 0; i < (int64_t)vals.size(); ++i) vals[i] = m.weights[i][j];
      coeff.emplace(m.window[j], CXFunction(sp, m.depth, std::move(vals)));
    }
  } else {
    for (size_t j = 0; j < m.window.size(); ++j) {
      std::vector<Complex> vals(sp->num_points());
      for (int x = 0; x < sp->num_points(); ++x) vals[x] = m.weights[x][j];
      coeff.emplace(m.window[j], CXFunction(sp, 0, std::move(vals)));
    }
  }
  return A0Element(sp, std::move(coeff));
}

MeanCandidate mean_from_a0(const A0Element& f, double tol) {
  auto c = classify(f, tol);
  if (!c.in_Z0_plus || std::abs(*c.pi_value - 1.0) > tol)
    throw std::invalid_argument("not a mean: needs Z0+ with pi = 1");
  MeanCandidate m;
  m.kind = MeanCandidate::Kind::Dense;
  m.space = f.space();
  m.depth = f.depth();
  for (const auto& [g, p] : f.coeff()) m.window.push_back(g);
  std::sort(m.window.begin(), m.window.end());
  int64_t rows = m.space->dim_at(m.depth);
  m.weights.assign(rows, std::vector<double>(m.window.size(), 0.0));
  for (size_t j = 0; j < m.window.size(); ++j) {
    auto p = f.at(m.window[j]);
    for (int64_t i = 0; i < rows; ++i) m.weights[i][j] = std::max(0.0, p[i].real());
  }
  return m;
}

}  // namespace amenlab

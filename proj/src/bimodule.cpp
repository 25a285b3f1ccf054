#include "amenlab/bimodule.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace amenlab {

NormSpec NormSpec::uniform(NormKind kind, int d) {
  return {kind, Eigen::VectorXd::Ones(d)};
}

double NormSpec::vec(const Vector& v) const {
  double out = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    double t = weights(i) * std::abs(v(i));
    out = kind == NormKind::L1 ? out + t : std::max(out, t);
  }
  return out;
}

double NormSpec::op(const Matrix& M) const {
  double out = 0.0;
  if (kind == NormKind::L1) {
    for (int j = 0; j < M.cols(); ++j) {
      double col = 0.0;
      for (int i = 0; i < M.rows(); ++i) col += weights(i) * std::abs(M(i, j));
      out = std::max(out, col / weights(j));
    }
  } else {
    for (int i = 0; i < M.rows(); ++i) {
      double row = 0.0;
      for (int j = 0; j < M.cols(); ++j) row += std::abs(M(i, j)) / weights(j);
      out = std::max(out, weights(i) * row);
    }
  }
  return out;
}

NormSpec NormSpec::dual() const {
  return {kind == NormKind::L1 ? NormKind::LInf : NormKind::L1,
          weights.cwiseInverse()};
}

Matrix BimoduleSpec::left_word(const Word& g) const {
  Matrix M = Matrix::Identity(dim, dim);
  for (const auto& f : generator_factors(space->group(), g)) M = M * left.at(f);
  return M;
}

Matrix BimoduleSpec::right_word(const Word& g) const {
  // anti-multiplicative extension
  Matrix M = Matrix::Identity(dim, dim);
  for (const auto& f : generator_factors(space->group(), g)) M = right.at(f) * M;
  return M;
}

Matrix BimoduleSpec::left_cx(const CXFunction& p) const {
  Matrix M = Matrix::Zero(dim, dim);
  for (int x = 0; x < (int)left_p.size(); ++x) M += p.value_at_point(x) * left_p[x];
  return M;
}

Matrix BimoduleSpec::right_cx(const CXFunction& p) const {
  Matrix M = Matrix::Zero(dim, dim);
  for (int x = 0; x < (int)right_p.size(); ++x) M += p.value_at_point(x) * right_p[x];
  return M;
}

Matrix BimoduleSpec::left_mono(const CXFunction& p, const Word& g) const {
  return left_cx(p) * left_word(g);
}

Matrix BimoduleSpec::right_mono(const CXFunction& p, const Word& g) const {
  return right_word(g) * right_cx(p);
}

Matrix BimoduleSpec::left_el(const A0Element& a) const {
  Matrix M = Matrix::Zero(dim, dim);
  for (const auto& [g, p] : a.coeff()) M += left_mono(p, g);
  return M;
}

Matrix BimoduleSpec::right_el(const A0Element& a) const {
  Matrix M = Matrix::Zero(dim, dim);
  for (const auto& [g, p] : a.coeff()) M += right_mono(p, g);
  return M;
}

BimoduleSpec BimoduleSpec::dual() const {
  BimoduleSpec N;
  N.space = space;
  N.dim = dim;
  for (const auto& [g, M] : right) N.left[g] = M.transpose();
  for (const auto& [g, M] : left) N.right[g] = M.transpose();
  for (const auto& M : right_p) N.left_p.push_back(M.transpose());
  for (const auto& M : left_p) N.right_p.push_back(M.transpose());
  N.norm = norm.dual();
  return N;
}

double BimoduleSpec::Violations::max() const {
  return std::max(multiplicative, std::max(commute, contractive));
}

BimoduleSpec::Violations BimoduleSpec::validate(uint32_t seed, int samples) const {
  Violations out;
  const auto& G = space->group();
  auto gens = G->generators();
  std::mt19937 rng(seed);
  auto rand_word = [&] {
    Word w = G->identity();
    int len = (int)(rng() % 4);
    for (int i = 0; i < len; ++i) w = G->multiply(w, gens[rng() % gens.size()]);
    return w;
  };
  for (int t = 0; t < samples; ++t) {
    Word g = rand_word(), h = rand_word();
    Word gh = G->multiply(g, h);
    out.multiplicative = std::max(
        out.multiplicative, (left_word(gh) - left_word(g) * left_word(h)).norm());
    out.multiplicative = std::max(
        out.multiplicative, (right_word(gh) - right_word(h) * right_word(g)).norm());
    // covariance of the indicator actions
    int x = (int)(rng() % space->num_points());
    auto p = CXFunction::indicator(space, 0, x);
    out.multiplicative =
        std::max(out.multiplicative,
                 (left_word(g) * left_cx(p) - left_cx(p.translated(g)) * left_word(g))
                     .norm());
    out.commute = std::max(out.commute, (left_word(g) * right_word(h) -
                                         right_word(h) * left_word(g))
                                            .norm());
    out.commute = std::max(
        out.commute, (left_cx(p) * right_word(h) - right_word(h) * left_cx(p)).norm());
    out.commute = std::max(
        out.commute, (left_word(g) * right_cx(p) - right_cx(p) * left_word(g)).norm());
  }
  for (const auto& [g, M] : left)
    out.contractive = std::max(out.contractive, norm.op(M) - 1.0);
  for (const auto& [g, M] : right)
    out.contractive = std::max(out.contractive, norm.op(M) - 1.0);
  for (const auto& M : left_p)
    out.contractive = std::max(out.contractive, norm.op(M) - 1.0);
  for (const auto& M : right_p)
    out.contractive = std::max(out.contractive, norm.op(M) - 1.0);
  out.contractive = std::max(out.contractive, 0.0);
  return out;
}

BimoduleSpec random_bimodule(const SpacePtr& space, int block, uint32_t seed,
                             NormKind kind) {
  if (space->is_boundary())
    throw std::invalid_argument("matrix bimodules need a finite space");
  const auto& G = space->group();
  const int n = space->num_points();
  const int dim = n * n * block;
  std::mt19937 rng(seed);
  auto idx = [&](int x1, int x2, int k) { return (x1 * n + x2) * block + k; };

  // commuting diagonal sign factors that respect the group relations
  auto diag_signs = [&] {
    Eigen::VectorXd d(block);
    for (int k = 0; k < block; ++k) d(k) = rng() % 2 ? 1.0 : -1.0;
    return d;
  };
  std::map<Word, Eigen::VectorXd> afac, bfac;
  auto gens = G->generators();
  switch (G->kind()) {
    case GroupKind::Free:
    case GroupKind::FreeAbelian:
      for (int i = 1; i <= G->rank(); ++i) {
        Word pos, neg;
        if (G->kind() == GroupKind::Free) {
          pos = {(int32_t)i};
          neg = {(int32_t)-i};
        } else {
          pos = Word(G->rank(), 0);
          pos[i - 1] = 1;
          neg = Word(G->rank(), 0);
          neg[i - 1] = -1;
        }
        Eigen::VectorXd a = diag_signs(), b = diag_signs();
        afac[pos] = afac[neg] = a;  // sign diagonals are self-inverse
        bfac[pos] = bfac[neg] = b;
      }
      break;
    case GroupKind::Finite:
      for (const auto& g : gens) {
        afac[g] = Eigen::VectorXd::Ones(block);
        bfac[g] = Eigen::VectorXd::Ones(block);
      }
      break;
  }

  BimoduleSpec M;
  M.space = space;
  M.dim = dim;
  M.norm = NormSpec::uniform(kind, dim);
  for (const auto& g : gens) {
    Matrix L = Matrix::Zero(dim, dim), R = Matrix::Zero(dim, dim);
    Word ginv = G->inverse(g);
    for (int x1 = 0; x1 < n; ++x1)
      for (int x2 = 0; x2 < n; ++x2)
        for (int k = 0; k < block; ++k) {
          L(idx(space->act_point(g, x1), x2, k), idx(x1, x2, k)) = afac.at(g)(k);
          R(idx(x1, space->act_point(ginv, x2), k), idx(x1, x2, k)) = bfac.at(g)(k);
        }
    M.left[g] = L;
    M.right[g] = R;
  }
  for (int x = 0; x < n; ++x) {
    Matrix Lp = Matrix::Zero(dim, dim), Rp = Matrix::Zero(dim, dim);
    for (int x1 = 0; x1 < n; ++x1)
      for (int x2 = 0; x2 < n; ++x2)
        for (int k = 0; k < block; ++k) {
          if (x1 == x) Lp(idx(x1, x2, k), idx(x1, x2, k)) = 1.0;
          if (x2 == x) Rp(idx(x1, x2, k), idx(x1, x2, k)) = 1.0;
        }
    M.left_p.push_back(Lp);
    M.right_p.push_back(Rp);
  }
  return M;
}

Vector DerivationSpec::d_cx(const CXFunction& p) const {
  Vector v = Vector::Zero(dim);
  for (int x = 0; x < (int)dp.size(); ++x) v += p.value_at_point(x) * dp[x];
  return v;
}

namespace {

Vector d_word_in(const DerivationSpec& D, const Word& g, const BimoduleSpec& N) {
  auto factors = generator_factors(N.space->group(), g);
  const int k = (int)factors.size();
  std::vector<Matrix> rsuf(k + 1, Matrix::Identity(N.dim, N.dim));
  for (int j = k - 1; j >= 0; --j) rsuf[j] = rsuf[j + 1] * N.right.at(factors[j]);
  Vector out = Vector::Zero(N.dim);
  Matrix lpre = Matrix::Identity(N.dim, N.dim);
  for (int j = 0; j < k; ++j) {
    out += lpre * (rsuf[j + 1] * D.dg.at(factors[j]));
    lpre = lpre * N.left.at(factors[j]);
  }
  return out;
}

// D(p * delta_g) = p.D(delta_g) + D(p).delta_g in the module N the values
// live in
Vector d_mono_in(const DerivationSpec& D, const CXFunction& p, const Word& g,
                 const BimoduleSpec& N) {
  return N.left_cx(p) * d_word_in(D, g, N) + N.right_word(g) * D.d_cx(p);
}

}  // namespace

Vector DerivationSpec::d_word(const Word& g, const BimoduleSpec& M) const {
  return d_word_in(*this, g, M.dual());
}

Vector DerivationSpec::d_mono(const CXFunction& p, const Word& g,
                              const BimoduleSpec& M) const {
  return d_mono_in(*this, p, g, M.dual());
}

double derivation_defect(const DerivationSpec& D, const BimoduleSpec& M, int samples,
                         uint32_t seed) {
  if (D.dim != M.dim) throw std::invalid_argument("dimension mismatch");
  BimoduleSpec N = M.dual();
  const auto& G = N.space->group();
  auto gens = G->generators();
  std::mt19937 rng(seed);
  auto rand_word = [&] {
    Word w = G->identity();
    int len = (int)(rng() % 3);
    for (int i = 0; i < len; ++i) w = G->multiply(w, gens[rng() % gens.size()]);
    return w;
  };
  auto rand_cx = [&] {
    if (rng() % 2) return CXFunction::constant(N.space, 1.0);
    return CXFunction::indicator(N.space, 0, (int64_t)(rng() % N.space->num_points()));
  };
  // the unit has zero image by construction of the Leibniz extension
  double defect = N.norm.vec(d_word_in(D, G->identity(), N));
  for (int t = 0; t < samples; ++t) {
    Word g = rand_word(), h = rand_word();
    CXFunction pa = rand_cx(), pb = rand_cx();
    CXFunction q = pa * pb.translated(g);
    Vector lhs = d_mono_in(D, q, G->multiply(g, h), N);
    Vector rhs = N.left_mono(pa, g) * d_mono_in(D, pb, h, N) +
                 N.right_mono(pb, h) * d_mono_in(D, pa, g, N);
    defect = std::max(defect, N.norm.vec(lhs - rhs));
  }
  return defect;
}

DerivationSpec ad(const Vector& v, const BimoduleSpec& M) {
  BimoduleSpec N = M.dual();
  DerivationSpec D;
  D.space = M.space;
  D.dim = M.dim;
  for (const auto& g : M.space->group()->generators())
    D.dg[g] = N.left_word(g) * v - N.right_word(g) * v;
  for (int x = 0; x < M.space->num_points(); ++x)
    D.dp.push_back(N.left_p[x] * v - N.right_p[x] * v);
  return D;
}

ReduceResult reduce_to_cx_equivariant(const DerivationSpec& D, const BimoduleSpec& M) {
  BimoduleSpec N = M.dual();
  const int n = M.space->num_points();
  Matrix A(n * M.dim, M.dim);
  Vector b(n * M.dim);
  for (int x = 0; x < n; ++x) {
    A.block(x * M.dim, 0, M.dim, M.dim) = N.left_p[x] - N.right_p[x];
    b.segment(x * M.dim, M.dim) = D.dp[x];
  }
  ReduceResult out;
  out.tau0 = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  out.lstsq_residual = (A * out.tau0 - b).norm();
  out.reduced.space = D.space;
  out.reduced.dim = D.dim;
  for (const auto& [g, v] : D.dg)
    out.reduced.dg[g] = v - (N.left_word(g) * out.tau0 - N.right_word(g) * out.tau0);
  for (int x = 0; x < n; ++x)
    out.reduced.dp.push_back(D.dp[x] -
                             (N.left_p[x] * out.tau0 - N.right_p[x] * out.tau0));
  for (int x = 0; x < n; ++x) {
    out.equivariance_defect =
        std::max(out.equivariance_defect, N.norm.vec(out.reduced.dp[x]));
    for (const auto& g : M.space->group()->generators())
      out.equivariance_defect = std::max(
          out.equivariance_defect, N.norm.vec(N.right_word(g) * out.reduced.dp[x]));
  }
  return out;
}

InnerResult solve_inner_via_mean(const DerivationSpec& D, const BimoduleSpec& M,
                                 const A0Element& mean, double tol) {
  BimoduleSpec N = M.dual();
  const auto& G = M.space->group();
  AffineSystem sys;
  sys.space = M.space;
  sys.dim = M.dim;
  for (const auto& g : G->generators()) {
    Word ginv = G->inverse(g);
    sys.alpha[g] = N.left_word(g) * N.right_word(ginv);
    sys.c[g] = -(N.right_word(ginv) * D.dg.at(g));
  }
  sys.beta = N.left_p;
  InnerResult out;
  out.tau = orbit_average(mean, sys, Vector::Zero(M.dim), tol);
  for (const auto& g : G->generators())
    for (int x = 0; x < M.space->num_points(); ++x) {
      auto p = CXFunction::indicator(M.space, 0, x);
      Vector lhs = d_mono_in(D, p, g, N);
      Vector rhs = N.left_mono(p, g) * out.tau - N.right_mono(p, g) * out.tau;
      out.residual = std::max(out.residual, N.norm.vec(lhs - rhs));
    }
  for (const auto& g : G->generators())
    out.mean_defect = std::max(out.mean_defect, a0_norm(gamma_act(g, mean) - mean));
  out.C = out.mean_defect > 1e-14 ? out.residual / out.mean_defect : 0.0;
  return out;
}

double cx_centrality_defect(const DerivationSpec& D, const BimoduleSpec& M) {
  BimoduleSpec N = M.dual();
  const auto& G = M.space->group();
  double out = 0.0;
  for (const auto& g : G->generators()) {
    Vector cg = -(N.right_word(G->inverse(g)) * D.dg.at(g));
    for (int x = 0; x < M.space->num_points(); ++x)
      out = std::max(out, N.norm.vec(N.left_p[x] * cg - N.right_p[x] * cg));
  }
  return out;
}

namespace {

// all set partitions of {0..n-1} as indicator decompositions of 1_X
void set_partitions(int n, std::vector<std::vector<std::vector<double>>>& out) {
  std::vector<int> assign(n, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      std::vector<std::vector<double>> parts(blocks, std::vector<double>(n, 0.0));
      for (int j = 0; j < n; ++j) parts[assign[j]][j] = 1.0;
      out.push_back(std::move(parts));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      assign[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
}

}  // namespace

double geometric_defect(const BimoduleSpec& M, Side side, NormKind mode, int samples,
                        uint32_t seed) {
  const int n = M.space->num_points();
  std::vector<std::vector<std::vector<double>>> decomps;
  if (n <= 6) set_partitions(n, decomps);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < samples; ++t) {
    int parts = 2 + (int)(rng() % 3);
    std::vector<std::vector<double>> soft(parts, std::vector<double>(n, 0.0));
    double scale = 0.3 + 0.7 * unif(rng);  // sum <= 1_X allowed to be strict
    for (int x = 0; x < n; ++x) {
      double total = 0.0;
      for (int k = 0; k < parts; ++k) {
        soft[k][x] = -std::log(1.0 - unif(rng));
        total += soft[k][x];
      }
      for (int k = 0; k < parts; ++k) soft[k][x] *= scale / total;
    }
    decomps.push_back(std::move(soft));
  }

  auto act_matrix = [&](const std::vector<double>& p) {
    Matrix A = Matrix::Zero(M.dim, M.dim);
    for (int x = 0; x < n; ++x)
      A += p[x] * (side == Side::Left ? M.left_p[x] : M.right_p[x]);
    return A;
  };
  auto rand_vec = [&] {
    Vector v(M.dim);
    for (int i = 0; i < M.dim; ++i)
      v(i) = Complex(2.0 * unif(rng) - 1.0, 2.0 * unif(rng) - 1.0);
    return v;
  };

  double defect = 0.0;
  for (const auto& parts : decomps) {
    for (const auto& p : parts)
      for (double v : p)
        if (v < -1e-12 || v > 1.0 + 1e-12)
          throw std::invalid_argument("decomposition leaves C(X,[0,1])");
    double cover = 0.0;
    for (int x = 0; x < n; ++x) {
      double s = 0.0;
      for (const auto& p : parts) s += p[x];
      if (s > 1.0 + 1e-12) throw std::invalid_argument("decomposition exceeds 1_X");
      cover = std::max(cover, s);
    }
    std::vector<Matrix> acts;
    for (const auto& p : parts) acts.push_back(act_matrix(p));
    for (int rep = 0; rep < 4; ++rep) {
      if (mode == NormKind::L1) {
        Vector v = rand_vec();
        double lhs = 0.0;
        for (const auto& A : acts) lhs += M.norm.vec(A * v);
        defect = std::max(defect, lhs - cover * M.norm.vec(v));
      } else {
        Vector sum = Vector::Zero(M.dim);
        double worst = 0.0;
        for (const auto& A : acts) {
          Vector v = rand_vec();
          sum += A * v;
          worst = std::max(worst, M.norm.vec(v));
        }
        defect = std::max(defect, M.norm.vec(sum) - cover * worst);
      }
    }
  }
  return std::max(defect, 0.0);
}

namespace {

nlohmann::json cmat_to_json(const Matrix& M) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < M.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix cmat_from_json(const nlohmann::json& j) {
  Matrix M(j.size(), j.empty() ? 0 : j[0].size());
  for (int i = 0; i < (int)j.size(); ++i)
    for (int k = 0; k < (int)j[i].size(); ++k)
      M(i, k) = Complex(j[i][k][0], j[i][k][1]);
  return M;
}

}  // namespace

nlohmann::json bimodule_to_json(const BimoduleSpec& M) {
  nlohmann::json j;
  j["space"] = space_to_json(M.space);
  j["dim"] = M.dim;
  j["norm"]["kind"] = M.norm.kind == NormKind::L1 ? "l1" : "linf";
  j["norm"]["weights"] = std::vector<double>(
      M.norm.weights.data(), M.norm.weights.data() + M.norm.weights.size());
  auto gens = nlohmann::json::array();
  for (const auto& [g, L] : M.left) {
    nlohmann::json e;
    e["word"] = g;
    e["left"] = cmat_to_json(L);
    e["right"] = cmat_to_json(M.right.at(g));
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  auto inds = nlohmann::json::array();
  for (size_t x = 0; x < M.left_p.size(); ++x) {
    nlohmann::json e;
    e["left"] = cmat_to_json(M.left_p[x]);
    e["right"] = cmat_to_json(M.right_p[x]);
    inds.push_back(std::move(e));
  }
  j["indicators"] = std::move(inds);
  return j;
}

BimoduleSpec bimodule_from_json(const nlohmann::json& j) {
  BimoduleSpec M;
  M.space = space_from_json(j.at("space"));
  M.dim = j.at("dim");
  M.norm.kind = j.at("norm").at("kind") == "l1" ? NormKind::L1 : NormKind::LInf;
  auto w = j.at("norm").at("weights").get<std::vector<double>>();
  M.norm.weights = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
  for (const auto& e : j.at("generators")) {
    Word g = e.at("word").get<Word>();
    M.left[g] = cmat_from_json(e.at("left"));
    M.right[g] = cmat_from_json(e.at("right"));
  }
  for (const auto& e : j.at("indicators")) {
    M.left_p.push_back(cmat_from_json(e.at("left")));
    M.right_p.push_back(cmat_from_json(e.at("right")));
  }
  return M;
}

nlohmann::json derivation_to_json(const DerivationSpec& D) {
  nlohmann::json j;
  j["space"] = space_to_json(D.space);
  j["dim"] = D.dim;
  auto gens = nlohmann::json::array();
  for (const auto& [g, v] : D.dg) {
    nlohmann::json e;
    e["word"] = g;
    e["value"] = cmat_to_json(v);
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  auto inds = nlohmann::json::array();
  for (const auto& v : D.dp) inds.push_back(cmat_to_json(v));
  j["indicators"] = std::move(inds);
  return j;
}

DerivationSpec derivation_from_json(const nlohmann::json& j) {
  DerivationSpec D;
  D.space = space_from_json(j.at("space"));
  D.dim = j.at("dim");
  for (const auto& e : j.at("generators"))
    D.dg[e.at("word").get<Word>()] = Vector(cmat_from_json(e.at("value")));
  for (const auto& e : j.at("indicators")) D.dp.push_back(Vector(cmat_from_json(e)));
  return D;
}

namespace {

double rvecnorm(NormKind kind, const Eigen::VectorXd& x) {
  return kind == NormKind::L1 ? x.lpNorm<1>() : x.lpNorm<Eigen::Infinity>();
}

// norm-achieving functional of dual norm at most one
Eigen::VectorXd dual_achiever(NormKind kind, const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  if (kind == NormKind::L1) {
    for (int i = 0; i < x.size(); ++i) out(i) = x(i) >= 0 ? 1.0 : -1.0;
  } else {
    int arg = 0;
    x.cwiseAbs().maxCoeff(&arg);
    out(arg) = x(arg) >= 0 ? 1.0 : -1.0;
  }
  return out;
}

// vertices of the unit ball: +-e_i for l1, sign vectors for linf
std::vector<Eigen::VectorXd> ball_vertices(NormKind kind, int d) {
  std::vector<Eigen::VectorXd> out;
  if (kind == NormKind::L1) {
    for (int i = 0; i < d; ++i)
      for (double s : {1.0, -1.0}) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        v(i) = s;
        out.push_back(v);
      }
  } else {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Eigen::VectorXd v(d);
      for (int i = 0; i < d; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
      out.push_back(v);
    }
  }
  return out;
}

NormKind dual_kind(NormKind k) {
  return k == NormKind::L1 ? NormKind::LInf : NormKind::L1;
}

// sup over unit v, w of |v^T M w|, exact by vertex enumeration
double cross_norm(const Eigen::MatrixXd& M, TensorFactor V, TensorFactor W) {
  double out = 0.0;
  for (const auto& v : ball_vertices(V.kind, V.dim))
    for (const auto& w : ball_vertices(W.kind, W.dim))
      out = std::max(out, std::abs(v.dot(M * w)));
  return out;
}

}  // namespace

double injective_norm(const Eigen::MatrixXd& Z, TensorFactor V, TensorFactor W) {
  if (V.dim > 3 || W.dim > 3) throw std::invalid_argument("tensor dims limited to 3");
  double out = 0.0;
  for (const auto& phi : ball_vertices(dual_kind(V.kind), V.dim))
    for (const auto& psi : ball_vertices(dual_kind(W.kind), W.dim))
      out = std::max(out, std::abs(phi.dot(Z * psi)));
  return out;
}

TensorNormBracket projective_norm(const Eigen::MatrixXd& Z, TensorFactor V,
                                  TensorFactor W) {
  if (V.dim > 3 || W.dim > 3) throw std::invalid_argument("tensor dims limited to 3");
  // upper bounds from explicit rank-one decompositions
  double rows = 0.0, cols = 0.0, svd_bound = 0.0;
  for (int i = 0; i < V.dim; ++i) rows += rvecnorm(W.kind, Z.row(i));
  for (int j = 0; j < W.dim; ++j) cols += rvecnorm(V.kind, Z.col(j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  for (int l = 0; l < svd.singularValues().size(); ++l)
    svd_bound += svd.singularValues()(l) * rvecnorm(V.kind, svd.matrixU().col(l)) *
                 rvecnorm(W.kind, svd.matrixV().col(l));
  TensorNormBracket out;
  out.upper = std::min(rows, std::min(cols, svd_bound));

  // certified lower bounds from dual pairings with cross norm at most one
  out.lower = injective_norm(Z, V, W);
  std::vector<Eigen::MatrixXd> duals;
  duals.push_back(Z.unaryExpr([](double t) { return t >= 0 ? 1.0 : -1.0; }));
  Eigen::MatrixXd per_row(V.dim, W.dim), per_col(V.dim, W.dim);
  for (int i = 0; i < V.dim; ++i)
    per_row.row(i) = dual_achiever(W.kind, Z.row(i)).transpose();
  for (int j = 0; j < W.dim; ++j) per_col.col(j) = dual_achiever(V.kind, Z.col(j));
  duals.push_back(per_row);
  duals.push_back(per_col);
  for (const auto& M : duals) {
    double cn = cross_norm(M, V, W);
    if (cn > 1e-14)
      out.lower = std::max(out.lower, std::abs((M.array() * Z.array()).sum()) / cn);
  }
  out.upper = std::max(out.upper, out.lower);
  return out;
}

TensorReport tensor_geometricity_check(const Eigen::MatrixXd& Z1,
                                       const Eigen::MatrixXd& Z2, TensorFactor V,
                                       TensorFactor W, bool projective) {
  TensorReport rep;
  rep.projective = projective;
  for (int i = 0; i < V.dim; ++i)
    if (Z1.row(i).cwiseAbs().sum() > 1e-14 && Z2.row(i).cwiseAbs().sum() > 1e-14)
      throw std::invalid_argument("supports are not disjoint");
  auto bracket = [&](const Eigen::MatrixXd& Z) {
    if (projective) return projective_norm(Z, V, W);
    double t = injective_norm(Z, V, W);
    return TensorNormBracket{t, t};
  };
  rep.z1 = bracket(Z1);
  rep.z2 = bracket(Z2);
  rep.sum = bracket(Z1 + Z2);
  if (projective) {
    // disjoint supports on an l1-type factor make the norm additive; the
    // brackets must allow norm(z1+z2) = norm(z1) + norm(z2)
    rep.additivity_gap =
        std::max(0.0, std::max(rep.z1.lower + rep.z2.lower - rep.sum.upper,
                               rep.sum.lower - rep.z1.upper - rep.z2.upper));
  } else {
    // injective norms are exact; check the triangle inequality side
    rep.additivity_gap = std::max(0.0, rep.sum.lower - rep.z1.upper - rep.z2.upper);
  }
  rep.ok = rep.additivity_gap <= 1e-10;
  return rep;
}

}  // namespace amenlab

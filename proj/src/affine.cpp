#include "amenlab/affine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace amenlab {


Matrix AffineSystem::alpha_word(const Word& g) const {
  Matrix M = Matrix::Identity(dim, dim);
  for (const auto& f : generator_factors(space->group(), g)) M = M * alpha.at(f);
  return M;
}

Vector AffineSystem::cocycle_word(const Word& g) const {
  Vector v = Vector::Zero(dim);
  Matrix M = Matrix::Identity(dim, dim);
  for (const auto& f : generator_factors(space->group(), g)) {
    v += M * c.at(f);
    M = M * alpha.at(f);
  }
  return v;
}

Matrix AffineSystem::beta_of(const CXFunction& p) const {
  if (p.space()->is_boundary())
    throw std::invalid_argument("matrix carrier needs a finite space");
  Matrix M = Matrix::Zero(dim, dim);
  for (int x = 0; x < (int)beta.size(); ++x) M += p.value_at_point(x) * beta[x];
  return M;
}

Vector AffineSystem::apply(const Word& g, const Vector& v) const {
  return alpha_word(g) * v + cocycle_word(g);
}

double AffineSystem::Violations::max() const {
  return std::max(cocycle, std::max(unital, compatibility));
}

AffineSystem::Violations AffineSystem::validate(uint32_t seed, int samples) const {
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
    Vector lhs = cocycle_word(G->multiply(g, h));
    Vector rhs = cocycle_word(g) + alpha_word(g) * cocycle_word(h);
    out.cocycle = std::max(out.cocycle, (lhs - rhs).norm());
  }
  out.unital = (beta_of(CXFunction::constant(space, 1.0)) - Matrix::Identity(dim, dim))
                   .norm();
  for (const auto& g : gens)
    for (int x = 0; x < space->num_points(); ++x) {
      auto p = CXFunction::indicator(space, 0, x);
      Matrix lhs = alpha_word(g) * beta_of(p) * alpha_word(G->inverse(g));
      Matrix rhs = beta_of(p.translated(g));
      out.compatibility = std::max(out.compatibility, (lhs - rhs).norm());
    }
  return out;
}

AffineSystem random_affine_system(const SpacePtr& space, int block, uint32_t seed) {
  if (space->is_boundary())
    throw std::invalid_argument("matrix carrier needs a finite space");
  const auto& G = space->group();
  const int n = space->num_points();
  const int dim = n * block;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  auto signed_perm = [&] {
    std::vector<int> perm(block);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix S = Matrix::Zero(block, block);
    for (int i = 0; i < block; ++i)
      S(perm[i], i) = (rng() % 2 ? 1.0 : -1.0);
    return S;
  };
  auto diag_signs = [&] {
    Matrix S = Matrix::Zero(block, block);
    for (int i = 0; i < block; ++i) S(i, i) = (rng() % 2 ? 1.0 : -1.0);
    return S;
  };

  // block factors must respect the group relations: arbitrary on free
  // generators, commuting diagonals on abelian ones, trivial on finite groups
  std::map<Word, Matrix> factor;
  auto gens = G->generators();
  switch (G->kind()) {
    case GroupKind::Free:
      for (int i = 1; i <= G->rank(); ++i) {
        Matrix S = signed_perm();
        factor[{(int32_t)i}] = S;
        factor[{(int32_t)-i}] = S.inverse();
      }
      break;
    case GroupKind::FreeAbelian:
      for (int i = 0; i < G->rank(); ++i) {
        Matrix S = diag_signs();
        Word e(G->rank(), 0);
        e[i] = 1;
        factor[e] = S;
        e[i] = -1;
        factor[e] = S.inverse();
      }
      break;
    case GroupKind::Finite:
      for (const auto& g : gens) factor[g] = Matrix::Identity(block, block);
      break;
  }

  AffineSystem sys;
  sys.space = space;
  sys.dim = dim;
  for (const auto& g : gens) {
    // P_g tensor S_g with P_g e_y = e_{g.y}
    Matrix A = Matrix::Zero(dim, dim);
    const Matrix& S = factor.at(g);
    for (int y = 0; y < n; ++y) {
      int gy = space->act_point(g, y);
      A.block(gy * block, y * block, block, block) = S;
    }
    sys.alpha[g] = A;
  }
  for (int x = 0; x < n; ++x) {
    Matrix B = Matrix::Zero(dim, dim);
    B.block(x * block, x * block, block, block) = Matrix::Identity(block, block);
    sys.beta.push_back(B);
  }
  // cocycles: free generators take arbitrary values (with the forced inverse
  // values); other groups get a coboundary so the relations hold
  if (G->kind() == GroupKind::Free) {
    for (int i = 1; i <= G->rank(); ++i) {
      Vector v(dim);
      for (int j = 0; j < dim; ++j) v(j) = Complex(unif(rng), unif(rng));
      sys.c[{(int32_t)i}] = v;
      sys.c[{(int32_t)-i}] = -(sys.alpha.at({(int32_t)-i}) * v);
    }
  } else {
    Vector w(dim);
    for (int j = 0; j < dim; ++j) w(j) = Complex(unif(rng), unif(rng));
    for (const auto& g : gens) sys.c[g] = w - sys.alpha.at(g) * w;
  }
  return sys;
}

Vector cx_convex_combine(const std::vector<CXFunction>& ps,
                         const std::vector<Vector>& vs, const AffineSystem& sys,
                         double tol) {
  if (ps.size() != vs.size() || ps.empty())
    throw std::invalid_argument("mismatched decomposition");
  CXFunction total = CXFunction::constant(sys.space, 0.0);
  for (const auto& p : ps) {
    for (const auto& z : p.values())
      if (z.real() < -tol || z.real() > 1.0 + tol || std::abs(z.imag()) > tol)
        throw std::invalid_argument("decomposition member leaves C(X,[0,1])");
    total += p;
  }
  if ((total - CXFunction::constant(sys.space, 1.0)).sup_norm() > tol)
    throw std::invalid_argument("decomposition does not sum to 1_X");
  Vector out = Vector::Zero(sys.dim);
  for (size_t i = 0; i < ps.size(); ++i) out += sys.beta_of(ps[i]) * vs[i];
  return out;
}

Vector orbit_average(const A0Element& f, const AffineSystem& sys, const Vector& c0,
                     double tol) {
  if ((pibar(f) - CXFunction::constant(f.space(), 1.0)).sup_norm() > tol)
    throw std::invalid_argument("orbit_average needs pibar(f) = 1_X");
  Vector out = Vector::Zero(sys.dim);
  for (const auto& [g, p] : f.coeff()) out += sys.beta_of(p) * sys.apply(g, c0);
  return out;
}

double transport_identity_defect(const A0Element& f, const Word& g,
                                 const AffineSystem& sys, const Vector& c0) {
  Vector lhs = sys.apply(g, orbit_average(f, sys, c0));
  Vector rhs = orbit_average(gamma_act(g, f), sys, c0);
  return (lhs - rhs).norm();
}

double fixed_point_residual(const Vector& v, const AffineSystem& sys,
                            const std::vector<Word>& gens) {
  double r = 0.0;
  for (const auto& g : gens) r = std::max(r, (sys.apply(g, v) - v).norm());
  return r;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& M) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < M.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  Matrix M(j.size(), j.empty() ? 0 : j[0].size());
  for (int i = 0; i < (int)j.size(); ++i)
    for (int k = 0; k < (int)j[i].size(); ++k)
      M(i, k) = Complex(j[i][k][0], j[i][k][1]);
  return M;
}

}  // namespace

nlohmann::json affine_to_json(const AffineSystem& sys) {
  nlohmann::json j;
  j["space"] = space_to_json(sys.space);
  j["dim"] = sys.dim;
  auto alphas = nlohmann::json::array();
  for (const auto& [g, M] : sys.alpha) {
    nlohmann::json e;
    e["word"] = g;
    e["matrix"] = matrix_to_json(M);
    auto it = sys.c.find(g);
    if (it != sys.c.end()) e["cocycle"] = matrix_to_json(it->second);
    alphas.push_back(std::move(e));
  }
  j["generators"] = std::move(alphas);
  auto betas = nlohmann::json::array();
  for (const auto& B : sys.beta) betas.push_back(matrix_to_json(B));
  j["beta"] = std::move(betas);
  return j;
}

AffineSystem affine_from_json(const nlohmann::json& j) {
  AffineSystem sys;
  sys.space = space_from_json(j.at("space"));
  sys.dim = j.at("dim");
  if (sys.dim > 64) throw std::invalid_argument("dimension limit 64 exceeded");
  for (const auto& e : j.at("generators")) {
    Word g = e.at("word").get<Word>();
    sys.alpha[g] = matrix_from_json(e.at("matrix"));
    if (e.contains("cocycle")) sys.c[g] = Vector(matrix_from_json(e.at("cocycle")));
  }
  for (const auto& b : j.at("beta")) sys.beta.push_back(matrix_from_json(b));
  return sys;
}

CXFunction CXAffineSystem::cocycle_value(const Word& g) const {
  return shift - shift.translated(g);
}

CXFunction CXAffineSystem::apply(const Word& g, const CXFunction& v) const {
  return v.translated(g) + cocycle_value(g);
}

CXFunction cx_orbit_average(const A0Element& f, const CXAffineSystem& sys,
                            const CXFunction& c0, double tol) {
  if ((pibar(f) - CXFunction::constant(f.space(), 1.0)).sup_norm() > tol)
    throw std::invalid_argument("orbit average needs pibar(f) = 1_X");
  CXFunction out = CXFunction::constant(sys.space, 0.0);
  for (const auto& [g, p] : f.coeff()) out += p * sys.apply(g, c0);
  return out;
}

double cx_transport_defect(const A0Element& f, const Word& g,
                           const CXAffineSystem& sys, const CXFunction& c0) {
  CXFunction lhs = sys.apply(g, cx_orbit_average(f, sys, c0));
  CXFunction rhs = cx_orbit_average(gamma_act(g, f), sys, c0);
  return (lhs - rhs).sup_norm();
}

double cx_fixed_point_residual(const CXFunction& v, const CXAffineSystem& sys,
                               const std::vector<Word>& gens) {
  double r = 0.0;
  for (const auto& g : gens) r = std::max(r, (sys.apply(g, v) - v).sup_norm());
  return r;
}

PrefixResidualReport prefix_orbit_residual(const CXFunction& q, int n) {
  const auto& sp = q.space();
  if (!sp->is_boundary()) throw std::invalid_argument("prefix residual needs a boundary");
  const auto& G = sp->group();
  const int dq = q.depth();
  if (n <= dq + 1) throw std::invalid_argument("need n > depth(q) + 1");

  // The orbit average of the prefix mean is u = shift + v with v(xi) =
  // (1/n) sum_{j=1..n} q(drop_j xi).  For a generator letter s,
  //   (alpha_s(u) - u)(xi) = (1/n) (q(xi) - q(drop_n xi))           if xi_1 != s
  //                        = (1/n) (q(drop_{n+1} xi) - q(drop_1 xi)) if xi_1 = s
  // and with n > dq + 1 every pair of depth-dq cylinders is reachable across
  // the gap, so the suprema reduce to oscillations of q over restricted
  // first-letter classes.
  PrefixResidualReport rep;
  rep.defect = 2.0 / n;
  if (dq == 0) {
    for (const auto& s : G->generators()) rep.per_generator.emplace_back(s, 0.0);
    return rep;
  }
  int64_t count = sp->cylinder_count(dq);
  std::vector<Word> words(count);
  for (int64_t i = 0; i < count; ++i) words[i] = sp->cylinder_word(dq, i);

  for (const auto& s : G->generators()) {
    int32_t s0 = s.at(0);
    double osc_a = 0.0, osc_b = 0.0;
    for (int64_t i = 0; i < count; ++i)
      for (int64_t j = 0; j < count; ++j) {
        double d = std::abs(q[i] - q[j]);
        if (words[i][0] != s0) osc_a = std::max(osc_a, d);      // u = xi prefix
        if (words[i][0] != -s0) osc_b = std::max(osc_b, d);     // y = drop_1 xi
      }
    double r = std::max(osc_a, osc_b) / n;
    rep.per_generator.emplace_back(s, r);
    rep.residual = std::max(rep.residual, r);
  }
  rep.C = rep.residual / rep.defect;
  return rep;
}

}  // namespace amenlab

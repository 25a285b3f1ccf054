#include "amenlab/groupoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace amenlab {

MeasuredAction MeasuredAction::uniform(const SpacePtr& space) {
  int n = space->num_points();
  return {space, Eigen::VectorXd::Constant(n, 1.0 / n)};
}

void MeasuredAction::validate(bool allow_null) const {
  if (space->is_boundary())
    throw std::invalid_argument("measured actions need a finite space");
  if (mu.size() != space->num_points())
    throw std::invalid_argument("weight size mismatch");
  if (std::abs(mu.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");
  for (int x = 0; x < mu.size(); ++x) {
    if (mu(x) < 0.0) throw std::invalid_argument("weights must be nonnegative");
    if (!allow_null && mu(x) == 0.0)
      throw std::invalid_argument("weights must be strictly positive");
  }
}

QuasiInvarianceReport quasi_invariance_check(const MeasuredAction& ma,
                                             const std::vector<Word>& gens) {
  QuasiInvarianceReport rep;
  for (const auto& g : gens)
    for (int x = 0; x < ma.space->num_points(); ++x)
      if ((ma.mu(x) == 0.0) != (ma.mu(ma.space->act_point(g, x)) == 0.0)) {
        rep.ok = false;
        rep.failures.emplace_back(g, x);
      }
  return rep;
}

namespace {

std::vector<Word> sorted_window(std::vector<Word> w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

}  // namespace

GammaXFunction GammaXFunction::zero(const SpacePtr& space, std::vector<Word> window) {
  window = sorted_window(std::move(window));
  Eigen::MatrixXcd v =
      Eigen::MatrixXcd::Zero((int)window.size(), space->num_points());
  return {space, std::move(window), std::move(v)};
}

GammaXFunction GammaXFunction::constant_section(const SpacePtr& space,
                                                std::vector<Word> window,
                                                const CXFunction& xi) {
  auto out = zero(space, std::move(window));
  for (int i = 0; i < (int)out.window.size(); ++i)
    for (int x = 0; x < space->num_points(); ++x)
      out.values(i, x) = xi.value_at_point(x);
  return out;
}

int GammaXFunction::find(const Word& g) const {
  auto it = std::lower_bound(window.begin(), window.end(), g);
  if (it == window.end() || *it != g) return -1;
  return (int)(it - window.begin());
}

Complex GammaXFunction::value(const Word& g, int x) const {
  int i = find(g);
  return i < 0 ? Complex(0.0) : values(i, x);
}

double GammaXFunction::sup_norm() const {
  double out = 0.0;
  for (int i = 0; i < values.rows(); ++i)
    for (int x = 0; x < values.cols(); ++x)
      out = std::max(out, std::abs(values(i, x)));
  return out;
}

GammaXFunction GammaXFunction::star() const {
  GammaXFunction out = *this;
  const auto& G = space->group();
  for (int i = 0; i < (int)window.size(); ++i) {
    Word ginv = G->inverse(window[i]);
    int j = find(ginv);
    if (j < 0) throw std::invalid_argument("star needs a symmetric window");
    for (int x = 0; x < values.cols(); ++x)
      out.values(i, x) = std::conj(values(j, space->act_point(ginv, x)));
  }
  return out;
}

GammaXFunction star_act(const A0Element& a, const GammaXFunction& xi,
                        size_t max_window) {
  const auto& G = xi.space->group();
  std::vector<Word> enlarged;
  for (const auto& [h, p] : a.coeff())
    for (const auto& g : xi.window) enlarged.push_back(G->multiply(h, g));
  enlarged = sorted_window(std::move(enlarged));
  if (enlarged.size() > max_window)
    throw std::length_error("window overflow in star action");
  auto out = GammaXFunction::zero(xi.space, std::move(enlarged));
  for (int i = 0; i < (int)out.window.size(); ++i)
    for (const auto& [h, p] : a.coeff()) {
      Word hg = G->multiply(G->inverse(h), out.window[i]);
      int j = xi.find(hg);
      if (j < 0) continue;
      for (int x = 0; x < out.values.cols(); ++x)
        out.values(i, x) +=
            p.value_at_point(x) * xi.values(j, xi.space->act_point(G->inverse(h), x));
    }
  return out;
}

GammaXFunction ast_act(const A0Element& a, const GammaXFunction& xi) {
  const auto& G = xi.space->group();
  auto out = GammaXFunction::zero(xi.space, xi.window);
  for (int i = 0; i < (int)out.window.size(); ++i)
    for (const auto& [h, p] : a.coeff())
      for (int x = 0; x < out.values.cols(); ++x)
        out.values(i, x) +=
            p.value_at_point(x) * xi.values(i, xi.space->act_point(G->inverse(h), x));
  return out;
}

CXFunction ExpectationMap::apply(const GammaXFunction& xi) const {
  const int n = space->num_points();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero((int)window.size() * n);
  for (int i = 0; i < (int)xi.window.size(); ++i) {
    auto it = std::lower_bound(window.begin(), window.end(), xi.window[i]);
    if (it == window.end() || *it != xi.window[i]) {
      if (xi.values.row(i).cwiseAbs().sum() > 0.0)
        throw std::length_error("window overflow in expectation");
      continue;
    }
    int j = (int)(it - window.begin());
    for (int x = 0; x < n; ++x) v(j * n + x) = xi.values(i, x);
  }
  Eigen::VectorXcd out = mat * v;
  return CXFunction(space, 0, std::vector<Complex>(out.data(), out.data() + n));
}

double ExpectationMap::op_norm() const {
  double out = 0.0;
  for (int x = 0; x < mat.rows(); ++x) out = std::max(out, mat.row(x).cwiseAbs().sum());
  return out;
}

ExpectationMap ev_e(const SpacePtr& space, std::vector<Word> window) {
  window = sorted_window(std::move(window));
  const int n = space->num_points();
  ExpectationMap P{space, window,
                   Eigen::MatrixXcd::Zero(n, (int)window.size() * n)};
  auto it = std::lower_bound(window.begin(), window.end(),
                             space->group()->identity());
  if (it == window.end() || *it != space->group()->identity())
    throw std::invalid_argument("window must contain the identity");
  int ie = (int)(it - window.begin());
  for (int x = 0; x < n; ++x) P.mat(x, ie * n + x) = 1.0;
  return P;
}

ExpectationMap expectation_from_central(const Eigen::MatrixXcd& tau0,
                                        const SpacePtr& space,
                                        std::vector<Word> window, double tol) {
  auto P = ev_e(space, std::move(window));
  const int n = space->num_points();
  const int d = (int)P.window.size() * n;
  if (tau0.rows() != d || tau0.cols() != d)
    throw std::invalid_argument("tau0 dimension mismatch");
  for (int x = 0; x < n; ++x) {
    Eigen::VectorXcd sect = Eigen::VectorXcd::Zero(d);
    for (int i = 0; i < (int)P.window.size(); ++i) sect(i * n + x) = 1.0;
    if ((tau0 * sect).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("tau0 must annihilate constant sections");
  }
  P.mat = P.mat * (Eigen::MatrixXcd::Identity(d, d) - tau0);
  return P;
}

double EquivarianceReport::max() const {
  return std::max(equivariance, std::max(unitality, linearity));
}

EquivarianceReport equivariance_defect(const ExpectationMap& P,
                                       const MeasuredAction& ma,
                                       const std::vector<Word>& gens) {
  EquivarianceReport rep;
  const auto& sp = P.space;
  const auto& G = sp->group();
  const int n = sp->num_points();
  auto supp_sup = [&](const CXFunction& f) {
    double out = 0.0;
    for (int x = 0; x < n; ++x)
      if (ma.mu(x) > 0.0) out = std::max(out, std::abs(f.value_at_point(x)));
    return out;
  };
  // inner window whose generator translates stay inside the window
  std::vector<Word> inner;
  for (const auto& h : P.window) {
    bool ok = true;
    for (const auto& g : gens)
      ok = ok && std::binary_search(P.window.begin(), P.window.end(),
                                    G->multiply(g, h));
    if (ok) inner.push_back(h);
  }
  for (const auto& h : inner)
    for (int x = 0; x < n; ++x) {
      auto xi = GammaXFunction::zero(sp, {h});
      xi.values(0, x) = 1.0;
      CXFunction base = P.apply(xi);
      for (const auto& g : gens) {
        A0Element dg = A0Element::delta(sp, g);
        CXFunction lhs = P.apply(star_act(dg, xi));
        rep.equivariance =
            std::max(rep.equivariance, supp_sup(lhs - base.translated(g)));
      }
      // L_inf(X)-linearity against point multipliers
      for (int y = 0; y < n; ++y) {
        auto p = CXFunction::indicator(sp, 0, y);
        auto pxi = xi;
        for (int i = 0; i < pxi.values.rows(); ++i)
          for (int z = 0; z < n; ++z) pxi.values(i, z) *= p.value_at_point(z);
        rep.linearity = std::max(rep.linearity, supp_sup(P.apply(pxi) - p * base));
      }
    }
  for (int x = 0; x < n; ++x) {
    auto p = CXFunction::indicator(sp, 0, x);
    auto sect = GammaXFunction::constant_section(sp, P.window, p);
    rep.unitality = std::max(rep.unitality, supp_sup(P.apply(sect) - p));
  }
  return rep;
}

ExpectationMap symmetrize(const ExpectationMap& P) {
  const auto& G = P.space->group();
  const int n = P.space->num_points();
  const int d = (int)P.window.size() * n;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < (int)P.window.size(); ++i) {
    Word ginv = G->inverse(P.window[i]);
    auto it = std::lower_bound(P.window.begin(), P.window.end(), ginv);
    if (it == P.window.end() || *it != ginv)
      throw std::invalid_argument("symmetrize needs a symmetric window");
    int j = (int)(it - P.window.begin());
    for (int x = 0; x < n; ++x)
      S(i * n + x, j * n + P.space->act_point(ginv, x)) = 1.0;
  }
  ExpectationMap out = P;
  out.mat = 0.5 * (P.mat + P.mat.conjugate() * S);
  return out;
}

ExpectationMap expectation_from_kernel(const Kernel& k, const SpacePtr& space,
                                       std::vector<Word> window) {
  window = sorted_window(std::move(window));
  const int n = space->num_points();
  ExpectationMap P{space, window,
                   Eigen::MatrixXcd::Zero(n, (int)window.size() * n)};
  for (const auto& [g, v] : k) {
    auto it = std::lower_bound(P.window.begin(), P.window.end(), g);
    if (it == P.window.end() || *it != g)
      throw std::invalid_argument("kernel support outside the window");
    int i = (int)(it - P.window.begin());
    for (int x = 0; x < n; ++x) P.mat(x, i * n + x) = v(x);
  }
  return P;
}

double kernel_equivariance_residual(const Kernel& k, const SpacePtr& space,
                                    const Word& g) {
  const auto& G = space->group();
  std::vector<Word> supp;
  for (const auto& [h, v] : k) {
    supp.push_back(h);
    supp.push_back(G->multiply(G->inverse(g), h));
  }
  supp = sorted_window(std::move(supp));
  auto at = [&](const Word& h, int x) {
    auto it = k.find(h);
    return it == k.end() ? 0.0 : it->second(x);
  };
  double out = 0.0;
  for (int x = 0; x < space->num_points(); ++x) {
    int gx = space->act_point(G->inverse(g), x);
    double total = 0.0;
    for (const auto& h : supp) total += std::abs(at(G->multiply(g, h), x) - at(h, gx));
    out = std::max(out, total);
  }
  return out;
}

PositivizeReport positivize(const Kernel& k, double eps, const SpacePtr& space,
                            const std::vector<Word>& gens) {
  if (eps <= 0.0) throw std::invalid_argument("regularizer must be positive");
  const auto& G = space->group();
  const int n = space->num_points();
  Kernel q = k;
  auto [it, fresh] = q.try_emplace(G->identity(), Eigen::VectorXd::Zero(n));
  it->second.array() += eps;

  PositivizeReport rep;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  for (const auto& [g, v] : q) eta += v.cwiseAbs();
  rep.eta_min = eta.minCoeff();
  for (const auto& [g, v] : q) rep.output[g] = v.cwiseAbs().cwiseQuotient(eta);

  auto at = [&](const Kernel& m, const Word& h, int x) {
    auto i = m.find(h);
    return i == m.end() ? 0.0 : i->second(x);
  };
  for (const auto& g : gens) {
    std::vector<Word> supp;
    for (const auto& [h, v] : q) {
      supp.push_back(h);
      supp.push_back(G->multiply(G->inverse(g), h));
    }
    supp = sorted_window(std::move(supp));
    double tri = 0.0, etad = 0.0;
    for (int x = 0; x < n; ++x) {
      int gx = space->act_point(G->inverse(g), x);
      double total = 0.0;
      for (const auto& h : supp)
        total += std::abs(std::abs(at(q, G->multiply(g, h), x)) -
                          std::abs(at(q, h, gx)));
      tri = std::max(tri, total);
      etad = std::max(etad, std::abs(eta(x) - eta(gx)));
    }
    rep.triangle_term = std::max(rep.triangle_term, tri);
    rep.eta_term = std::max(rep.eta_term, etad);
    rep.input_residual =
        std::max(rep.input_residual, kernel_equivariance_residual(q, space, g));
    rep.output_residual = std::max(rep.output_residual,
                                   kernel_equivariance_residual(rep.output, space, g));
  }
  rep.bound = (rep.triangle_term + rep.eta_term) / rep.eta_min;
  rep.bounded = rep.output_residual <= rep.bound + 1e-12;
  return rep;
}

}  // namespace amenlab

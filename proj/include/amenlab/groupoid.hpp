#pragma once

#include "amenlab/bimodule.hpp"

namespace amenlab {

// finite transformation groupoid with a probability weight on the unit space
struct MeasuredAction {
  SpacePtr space;
  Eigen::VectorXd mu;

  static MeasuredAction uniform(const SpacePtr& space);
  // allow_null permits zero weights (degenerate mode for negative tests)
  void validate(bool allow_null = false) const;
};

struct QuasiInvarianceReport {
  bool ok = true;
  std::vector<std::pair<Word, int>> failures;  // (generator, point)
};
QuasiInvarianceReport quasi_invariance_check(const MeasuredAction& ma,
                                             const std::vector<Word>& gens);

// function on W x X for a finite window W subset Gamma
struct GammaXFunction {
  SpacePtr space;
  std::vector<Word> window;  // sorted, duplicate-free
  Eigen::MatrixXcd values;   // |W| rows, |X| columns

  static GammaXFunction zero(const SpacePtr& space, std::vector<Word> window);
  // 1_W (x) xi_X
  static GammaXFunction constant_section(const SpacePtr& space,
                                         std::vector<Word> window,
                                         const CXFunction& xi);
  int find(const Word& g) const;  // -1 if outside the window
  Complex value(const Word& g, int x) const;
  double sup_norm() const;
  // xi*(g, x) = conj(xi(g^-1, g^-1.x)); needs a symmetric window
  GammaXFunction star() const;
};

// (a * xi)(g, x) = sum_h a_h(x) xi(h^-1 g, h^-1.x); enlarges the window to
// supp(a) * W and throws on overflow of max_window
GammaXFunction star_act(const A0Element& a, const GammaXFunction& xi,
                        size_t max_window = 65536);
// (a x* xi)(g, x) = sum_h a_h(x) xi(g, h^-1.x); window unchanged
GammaXFunction ast_act(const A0Element& a, const GammaXFunction& xi);

// linear map from functions on W x X to functions on X
struct ExpectationMap {
  SpacePtr space;
  std::vector<Word> window;
  Eigen::MatrixXcd mat;  // |X| rows, |W| * |X| columns, column (i * |X| + x)

  CXFunction apply(const GammaXFunction& xi) const;
  double op_norm() const;  // sup-norm to sup-norm
};

ExpectationMap ev_e(const SpacePtr& space, std::vector<Word> window);
// P = ev_e after (id - tau0); tau0 must annihilate 1_W (x) L_inf(X)
ExpectationMap expectation_from_central(const Eigen::MatrixXcd& tau0,
                                        const SpacePtr& space,
                                        std::vector<Word> window,
                                        double tol = 1e-10);

struct EquivarianceReport {
  double equivariance = 0.0;  // P(delta_g * xi) vs P(xi)^g
  double unitality = 0.0;     // P(1_W (x) xi_X) vs xi_X
  double linearity = 0.0;     // P((1 (x) xi_X) xi) vs xi_X P(xi)
  double max() const;
};
EquivarianceReport equivariance_defect(const ExpectationMap& P,
                                       const MeasuredAction& ma,
                                       const std::vector<Word>& gens);

// P'(xi) = (P(xi) + P(xi*)*) / 2; star-preserving, same unitality
ExpectationMap symmetrize(const ExpectationMap& P);

// finitely supported kernel Gamma -> L_inf(X) inducing the expectation
// P(xi)(x) = sum_g k_g(x) xi(g, x)
using Kernel = std::map<Word, Eigen::VectorXd>;

ExpectationMap expectation_from_kernel(const Kernel& k, const SpacePtr& space,
                                       std::vector<Word> window);
// exact operator residual sup_x sum_h |k(g h)(x) - k(h)(g^-1.x)|
double kernel_equivariance_residual(const Kernel& k, const SpacePtr& space,
                                    const Word& g);

struct PositivizeReport {
  Kernel output;           // positive, sums to 1_X exactly
  double eta_min = 0.0;    // min_x sum_g |k_g(x) + eps delta_e|
  double triangle_term = 0.0;  // max_g of the absolute-value residual term
  double eta_term = 0.0;       // max_g of the eta-invariance term
  double input_residual = 0.0;
  double output_residual = 0.0;
  double bound = 0.0;  // (triangle + eta) / eta_min, checked >= output_residual
  bool bounded = false;
};
PositivizeReport positivize(const Kernel& k, double eps, const SpacePtr& space,
                            const std::vector<Word>& gens);

}  // namespace amenlab

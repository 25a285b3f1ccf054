#pragma once

#include "amenlab/affine.hpp"

namespace amenlab {

enum class NormKind { L1, LInf };

// weighted l1 or linf norm on C^d; operator norms are exact
struct NormSpec {
  NormKind kind = NormKind::L1;
  Eigen::VectorXd weights;  // strictly positive, size d

  static NormSpec uniform(NormKind kind, int d);
  double vec(const Vector& v) const;
  double op(const Matrix& M) const;
  NormSpec dual() const;  // l1 <-> linf with inverted weights
};

// A0-bimodule on a matrix carrier over a finite space: per-generator left and
// right actions (right extends anti-multiplicatively) and pointwise indicator
// actions, with an exactly computable module norm
struct BimoduleSpec {
  SpacePtr space;
  int dim = 0;
  std::map<Word, Matrix> left, right;   // per generator
  std::vector<Matrix> left_p, right_p;  // per point indicator
  NormSpec norm;

  Matrix left_word(const Word& g) const;
  Matrix right_word(const Word& g) const;  // reversed factor product
  Matrix left_cx(const CXFunction& p) const;
  Matrix right_cx(const CXFunction& p) const;
  // action matrices of the monomial p * delta_g
  Matrix left_mono(const CXFunction& p, const Word& g) const;
  Matrix right_mono(const CXFunction& p, const Word& g) const;
  Matrix left_el(const A0Element& a) const;
  Matrix right_el(const A0Element& a) const;

  // dual module: (a.phi.b)(v) = phi(b.v.a), so dual-left = transpose of
  // right and dual-right = transpose of left, with the dual norm
  BimoduleSpec dual() const;

  struct Violations {
    double multiplicative = 0.0;  // sampled products, both sides
    double commute = 0.0;         // left/right actions commute
    double contractive = 0.0;     // excess of action op norms over 1
    double max() const;
  };
  Violations validate(uint32_t seed = 1, int samples = 32) const;
};

// carrier C^n (x) C^n (x) C^block with permutation actions on the point
// coordinates and commuting diagonal sign factors; the right CX action is a
// pointwise multiplier, so the module is right-CX-l1-geometric on the nose
BimoduleSpec random_bimodule(const SpacePtr& space, int block, uint32_t seed,
                             NormKind kind = NormKind::L1);

// derivation with values in the dual module of the bimodule it is used with;
// extended from generator and indicator values by the Leibniz rule
struct DerivationSpec {
  SpacePtr space;
  int dim = 0;
  std::map<Word, Vector> dg;  // D(delta_g) per generator
  std::vector<Vector> dp;     // D(1_x) per point indicator

  Vector d_cx(const CXFunction& p) const;
  Vector d_word(const Word& g, const BimoduleSpec& M) const;
  Vector d_mono(const CXFunction& p, const Word& g, const BimoduleSpec& M) const;
};

double derivation_defect(const DerivationSpec& D, const BimoduleSpec& M, int samples,
                         uint32_t seed = 1);
// D(a) = a.v - v.a for v in the dual module
DerivationSpec ad(const Vector& v, const BimoduleSpec& M);

struct ReduceResult {
  DerivationSpec reduced;
  Vector tau0;
  double lstsq_residual = 0.0;        // of D(p) = p.tau0 - tau0.p
  double equivariance_defect = 0.0;   // of the reduced derivation
};
ReduceResult reduce_to_cx_equivariant(const DerivationSpec& D, const BimoduleSpec& M);

struct InnerResult {
  Vector tau;
  double residual = 0.0;     // of D = ad_tau on indicator monomials
  double mean_defect = 0.0;  // max_g ||g.f - f|| of the mean
  double C = 0.0;            // residual / mean_defect when defect > 0
};
InnerResult solve_inner_via_mean(const DerivationSpec& D, const BimoduleSpec& M,
                                 const A0Element& mean, double tol = 1e-9);

// max over generators g and indicators p of ||p.c_g - c_g.p|| for
// c_g = -D(delta_g).delta_{g^-1}
double cx_centrality_defect(const DerivationSpec& D, const BimoduleSpec& M);

enum class Side { Left, Right };
// worst clamped violation of the l1 (resp. linf) geometric inequality over
// exhaustive indicator partitions (|X| <= 6) plus seeded soft decompositions
double geometric_defect(const BimoduleSpec& M, Side side, NormKind mode, int samples,
                        uint32_t seed = 1);

nlohmann::json bimodule_to_json(const BimoduleSpec& M);
BimoduleSpec bimodule_from_json(const nlohmann::json& j);
nlohmann::json derivation_to_json(const DerivationSpec& D);
DerivationSpec derivation_from_json(const nlohmann::json& j);

// real l1/linf tensor factor for the projective/injective norm checks
struct TensorFactor {
  NormKind kind = NormKind::L1;
  int dim = 0;  // <= 3
};

struct TensorNormBracket {
  double lower = 0.0;
  double upper = 0.0;
};
// injective norm: exact, dual-ball vertex enumeration
double injective_norm(const Eigen::MatrixXd& Z, TensorFactor V, TensorFactor W);
// projective norm: bracket from decomposition upper bounds and certified
// dual pairings; tight when a factor is l1-type
TensorNormBracket projective_norm(const Eigen::MatrixXd& Z, TensorFactor V,
                                  TensorFactor W);

struct TensorReport {
  bool projective = false;
  TensorNormBracket z1, z2, sum;
  double additivity_gap = 0.0;  // |norm(z1+z2) - norm(z1) - norm(z2)| bound
  bool ok = false;
};
// z1, z2 supported on disjoint row sets (disjointly supported CX multipliers
// on an l1-type V); checks norm additivity of the sum
TensorReport tensor_geometricity_check(const Eigen::MatrixXd& Z1,
                                       const Eigen::MatrixXd& Z2, TensorFactor V,
                                       TensorFactor W, bool projective);

}  // namespace amenlab

#pragma once

#include <Eigen/Dense>
#include <map>

#include "amenlab/a0.hpp"

namespace amenlab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Finite-dimensional affine module over a finite space: per-generator linear
// parts extended to words by multiplication, cocycle values extended by
// c_{gh} = c_g + alpha_g(c_h), and a linear unital beta from functions on X
// to matrices given on the point indicator basis.
struct AffineSystem {
  SpacePtr space;
  int dim = 0;
  std::map<Word, Matrix> alpha;  // per generator
  std::map<Word, Vector> c;      // per generator
  std::vector<Matrix> beta;      // per point indicator

  Matrix alpha_word(const Word& g) const;
  Vector cocycle_word(const Word& g) const;
  Matrix beta_of(const CXFunction& p) const;
  // alpha_g(v) = alpha_word(g) v + cocycle_word(g)
  Vector apply(const Word& g, const Vector& v) const;

  struct Violations {
    double cocycle = 0.0;        // on sampled word pairs
    double unital = 0.0;         // beta(1_X) vs identity
    double compatibility = 0.0;  // alpha_g beta(p) alpha_{g^-1} vs beta(p^g)
    double max() const;
  };
  Violations validate(uint32_t seed = 1, int samples = 32) const;
};

// dim = |X| * block; linear parts P_g (x) M_g with signed-permutation blocks,
// beta(1_x) the x-th block projection; cocycles random (free groups) or
// coboundaries (so relations are respected)
AffineSystem random_affine_system(const SpacePtr& space, int block, uint32_t seed);

Vector cx_convex_combine(const std::vector<CXFunction>& ps,
                         const std::vector<Vector>& vs, const AffineSystem& sys,
                         double tol = 1e-10);
// sum_g beta(f(g)) alpha_g(c0) for pibar(f) = 1_X
Vector orbit_average(const A0Element& f, const AffineSystem& sys, const Vector& c0,
                     double tol = 1e-10);
double transport_identity_defect(const A0Element& f, const Word& g,
                                 const AffineSystem& sys, const Vector& c0);
double fixed_point_residual(const Vector& v, const AffineSystem& sys,
                            const std::vector<Word>& gens);

nlohmann::json affine_to_json(const AffineSystem& sys);
AffineSystem affine_from_json(const nlohmann::json& j);

// Function-space carrier with exact depth bookkeeping: V is CXFunction,
// alpha_g v = v^g + (w - w^g), beta(p) v = p v.  Valid on boundary spaces
// where no finite matrix carrier exists.
struct CXAffineSystem {
  SpacePtr space;
  CXFunction shift;  // the w of the coboundary cocycle

  CXFunction cocycle_value(const Word& g) const;       // w - w^g
  CXFunction apply(const Word& g, const CXFunction& v) const;
};

CXFunction cx_orbit_average(const A0Element& f, const CXAffineSystem& sys,
                            const CXFunction& c0, double tol = 1e-10);
double cx_transport_defect(const A0Element& f, const Word& g,
                           const CXAffineSystem& sys, const CXFunction& c0);
double cx_fixed_point_residual(const CXFunction& v, const CXAffineSystem& sys,
                               const std::vector<Word>& gens);

// Exact residual of the orbit average of the prefix mean (length-n prefixes)
// in the CX carrier, without enumerating depth-(n + depth(q)) cylinders.
// q = c0 - shift; returns per-generator residuals.  Requires n > depth(q) + 1.
struct PrefixResidualReport {
  std::vector<std::pair<Word, double>> per_generator;
  double residual = 0.0;  // max
  double defect = 0.0;    // 2/n
  double C = 0.0;         // residual / defect
};
PrefixResidualReport prefix_orbit_residual(const CXFunction& q, int n);

}  // namespace amenlab

#pragma once

#include <string>
#include <vector>

#include "amenlab/a0.hpp"

namespace amenlab {

// A candidate approximate invariant mean: for each point (or depth-d
// cylinder) x, a probability vector over a finite window of group elements.
// Large prefix means on the boundary are kept procedural instead of storing
// the 4*3^(d-1) rows.
struct MeanCandidate {
  enum class Kind { Dense, PrefixLazy };

  Kind kind = Kind::Dense;
  SpacePtr space;
  std::vector<Word> window;                  // sorted, normal forms
  int depth = 0;                             // cylinder depth of the rows
  std::vector<std::vector<double>> weights;  // row per point / depth-d cylinder

  int prefix_n = 0;  // PrefixLazy: uniform over prefixes of lengths 1..n

  void validate(double tol = 1e-10) const;
  // weights of m(x) for a cylinder word (boundary spaces)
  std::vector<std::pair<Word, double>> row_at(const Word& x) const;
};

struct DefectReport {
  std::vector<std::pair<Word, double>> per_generator;
  double total = 0.0;  // max entry
  std::string window_description;
  double wall_time_s = 0.0;
};

// entry(g) = sup_x sum_h |m(g.x)(h) - m(x)(g^{-1}h)|, exact over the finite
// index sets
DefectReport defect(const MeanCandidate& m, const std::vector<Word>& gens);

// uniform measures on Folner sets; finite groups get the whole group, free
// abelian groups the box [0,n)^d.  Constant in x on the given space
// (default: a single point).
MeanCandidate folner_mean(const GroupPtr& G, int n, SpacePtr space = nullptr);

// m(xi) = uniform over the n prefixes of xi, window = ball(n)
MeanCandidate boundary_prefix_mean(int rank, int n);
// same mean with dense rows at depth n (small n only)
MeanCandidate boundary_prefix_mean_dense(int rank, int n);

// the mean as an element of A0 with coefficient p_h(x) = m(x)(h)
A0Element mean_to_a0(const MeanCandidate& m);
// read a mean off an A0 element in Z0+ with pi = 1
MeanCandidate mean_from_a0(const A0Element& f, double tol = 1e-9);

}  // namespace amenlab

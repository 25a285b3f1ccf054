#pragma once

#include <complex>
#include <vector>

#include "amenlab/space.hpp"

namespace amenlab {

using Complex = std::complex<double>;

// A function on X.  On a finite space this is a vector over the points.  On a
// boundary space it carries a depth d and one value per depth-d cylinder;
// deeper cylinders read the value of their length-d prefix.  Refining to a
// larger depth repeats each value over the (2k-1)^m sub-cylinders, which are
// contiguous in the mixed-radix cylinder indexing.
class CXFunction {
public:
  CXFunction() = default;
  CXFunction(SpacePtr space, int depth, std::vector<Complex> values);

  static CXFunction constant(SpacePtr space, Complex v);
  static CXFunction indicator(SpacePtr space, int depth, int64_t index);
  // indicator of the cylinder of a reduced word (finite spaces reject this)
  static CXFunction cylinder_indicator(SpacePtr space, const Word& w);

  const SpacePtr& space() const { return space_; }
  int depth() const { return depth_; }
  int64_t dim() const { return (int64_t)values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& values() { return values_; }
  Complex operator[](int64_t i) const { return values_[i]; }

  // evaluation on a cylinder at least as deep as depth()
  Complex value_at(const Word& w) const;
  Complex value_at_point(int x) const;

  CXFunction refined(int to_depth) const;
  // p^g with p^g(x) = p(g^{-1}.x); on a boundary space the result has
  // depth depth() + |g|
  CXFunction translated(const Word& g) const;

  CXFunction& operator+=(const CXFunction& o);
  CXFunction& operator-=(const CXFunction& o);
  CXFunction& operator*=(const CXFunction& o);  // pointwise
  CXFunction& operator*=(Complex c);
  friend CXFunction operator+(CXFunction a, const CXFunction& b) { return a += b; }
  friend CXFunction operator-(CXFunction a, const CXFunction& b) { return a -= b; }
  friend CXFunction operator*(CXFunction a, const CXFunction& b) { return a *= b; }
  friend CXFunction operator*(Complex c, CXFunction a) { return a *= c; }

  CXFunction conjugated() const;
  double sup_norm() const;
  double max_imag() const;
  bool same_shape(const CXFunction& o) const;

private:
  void align_with(CXFunction& o);

  SpacePtr space_;
  int depth_ = 0;
  std::vector<Complex> values_;
};

}  // namespace amenlab

#include "amenlab/cx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amenlab {

CXFunction::CXFunction(SpacePtr space, int depth, std::vector<Complex> values)
    : space_(std::move(space)), depth_(depth), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("null space");
  if (!space_->is_boundary()) depth_ = 0;
  if ((int64_t)values_.size() != space_->dim_at(depth_))
    throw std::invalid_argument("value vector has wrong size for this depth");
}

CXFunction CXFunction::constant(SpacePtr space, Complex v) {
  int64_t n = space->is_boundary() ? 1 : space->num_points();
  return CXFunction(std::move(space), 0, std::vector<Complex>(n, v));
}

CXFunction CXFunction::indicator(SpacePtr space, int depth, int64_t index) {
  std::vector<Complex> vals(space->dim_at(depth), 0.0);
  vals.at(index) = 1.0;
  return CXFunction(std::move(space), depth, std::move(vals));
}

CXFunction CXFunction::cylinder_indicator(SpacePtr space, const Word& w) {
  int64_t idx = space->cylinder_index(w);
  return indicator(std::move(space), (int)w.size(), idx);
}

Complex CXFunction::value_at(const Word& w) const {
  if (!space_->is_boundary()) throw std::logic_error("value_at needs a boundary space");
  if ((int)w.size() < depth_)
    throw std::invalid_argument("cylinder shallower than this function's depth");
  Word prefix(w.begin(), w.begin() + depth_);
  return values_[space_->cylinder_index(prefix)];
}

Complex CXFunction::value_at_point(int x) const {
  if (space_->is_boundary()) throw std::logic_error("value_at_point on a boundary space");
  return values_.at(x);
}

CXFunction CXFunction::refined(int to_depth) const {
  if (!space_->is_boundary() || to_depth == depth_) return *this;
  if (to_depth < depth_) throw std::invalid_argument("cannot coarsen a cylinder function");
  const int k = space_->boundary_rank();
  int64_t rep = 1;
  for (int d = depth_; d < to_depth; ++d) rep *= (depth_ == 0 && d == 0) ? 2 * k : 2 * k - 1;
  std::vector<Complex> out;
  out.reserve(values_.size() * rep);
  for (const auto& v : values_)
    for (int64_t r = 0; r < rep; ++r) out.push_back(v);
  return CXFunction(space_, to_depth, std::move(out));
}

CXFunction CXFunction::translated(const Word& g) const {
  if (space_->is_boundary()) {
    if (space_->group()->is_identity(g) || depth_ == 0) return *this;
    const CXFunction& src = *this;
    Word ginv = space_->group()->inverse(g);
    int out_depth = src.depth_ + (int)g.size();
    std::vector<Complex> out(space_->cylinder_count(out_depth));
    for (int64_t i = 0; i < (int64_t)out.size(); ++i) {
      Word w = space_->cylinder_word(out_depth, i);
      out[i] = src.values_[space_->cylinder_index(space_->act_cylinder(ginv, w))];
    }
    return CXFunction(space_, out_depth, std::move(out));
  }
  Word ginv = space_->group()->inverse(g);
  std::vector<Complex> out(values_.size());
  for (int x = 0; x < (int)values_.size(); ++x)
    out[x] = values_[space_->act_point(ginv, x)];
  return CXFunction(space_, 0, std::move(out));
}

void CXFunction::align_with(CXFunction& o) {
  if (!same_space(space_, o.space_)) throw std::invalid_argument("mixing functions on different spaces");
  if (depth_ < o.depth_) *this = refined(o.depth_);
  if (o.depth_ < depth_) o = o.refined(depth_);
}

CXFunction& CXFunction::operator+=(const CXFunction& o) {
  CXFunction rhs = o;
  align_with(rhs);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
  return *this;
}

CXFunction& CXFunction::operator-=(const CXFunction& o) {
  CXFunction rhs = o;
  align_with(rhs);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs.values_[i];
  return *this;
}

CXFunction& CXFunction::operator*=(const CXFunction& o) {
  CXFunction rhs = o;
  align_with(rhs);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] *= rhs.values_[i];
  return *this;
}

CXFunction& CXFunction::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

CXFunction CXFunction::conjugated() const {
  CXFunction out = *this;
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

double CXFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double CXFunction::max_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

bool CXFunction::same_shape(const CXFunction& o) const {
  return space_ == o.space_ && depth_ == o.depth_;
}

}  // namespace amenlab

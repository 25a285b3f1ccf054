#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "amenlab/cx.hpp"

#include "json.hpp"

namespace amenlab {

// Finitely supported element of A0(Gamma, X): a map from group elements in
// normal form to coefficient functions on X.  Coefficients with sup norm
// below 1e-14 are pruned; on boundary spaces all stored coefficients are
// refined to one common depth.
class A0Element {
public:
  static constexpr double kPruneTol = 1e-14;

  explicit A0Element(SpacePtr space);
  A0Element(SpacePtr space, std::map<Word, CXFunction> coeff);

  static A0Element delta(SpacePtr space, const Word& g);
  static A0Element embed(const CXFunction& p);  // p * delta_e

  const SpacePtr& space() const { return space_; }
  const std::map<Word, CXFunction>& coeff() const { return coeff_; }
  bool is_zero() const { return coeff_.empty(); }
  int depth() const;

  // coefficient at g, zero function if absent
  CXFunction at(const Word& g) const;
  void set(const Word& g, CXFunction p);

  A0Element& operator+=(const A0Element& o);
  A0Element& operator-=(const A0Element& o);
  A0Element& operator*=(Complex c);
  friend A0Element operator+(A0Element a, const A0Element& b) { return a += b; }
  friend A0Element operator-(A0Element a, const A0Element& b) { return a -= b; }
  friend A0Element operator*(Complex c, A0Element a) { return a *= c; }

private:
  void normalize();
  SpacePtr space_;
  std::map<Word, CXFunction> coeff_;
};

// f1*f2(g) = sum_h f1(h) . (f2(h^{-1}g))^h
A0Element convolve(const A0Element& f1, const A0Element& f2);
// || sum_g |f_g| ||_inf
double a0_norm(const A0Element& f);
// pointwise sum of all coefficients
CXFunction pibar(const A0Element& f);
// distance between elements in the A0 norm
double a0_distance(const A0Element& a, const A0Element& b);

struct Classification {
  bool in_W0 = false;
  std::optional<Complex> pi_value;
  bool in_ker_pibar = false;
  bool in_Z0_plus = false;
};
Classification classify(const A0Element& f, double tol = 1e-10);

// eq. (4.1) value for a Z0+ decomposition f = sum_k i^k parts[k]
double z0_norm(const std::vector<A0Element>& parts, double tol = 1e-10);

// g.f(h) = (f(g^{-1}h))^g; equals delta_g * f
A0Element gamma_act(const Word& g, const A0Element& f);
// (p.f)(h) = p . f(h)
A0Element cx_act(const CXFunction& p, const A0Element& f);
// f . p with (f.p)(h) = f(h) . p^h; equals f * embed(p)
A0Element cx_act_right(const A0Element& f, const CXFunction& p);

// ---- finitely supported l1(Gamma) vectors ----
using L1Vector = std::map<Word, Complex>;
double l1_norm(const L1Vector& v);
// right translate: (v * delta_h)(g) = v(g h^{-1})
L1Vector l1_right_translate(const GroupPtr& group, const L1Vector& v, const Word& h);

// Thm 3.1 transform: g -> delta(g,e) - e(g,x); x is a point index on finite
// spaces or a cylinder word on boundary spaces.
L1Vector ozawa_mean_from_unit(const A0Element& e, int point, double tol = 1e-9);
L1Vector ozawa_mean_from_unit(const A0Element& e, const Word& cylinder, double tol = 1e-9);

// Thm 7.3 transform: delta_e - m for pi(m)=1
A0Element unit_from_mean(const A0Element& m, double tol = 1e-9);
// both sides of || p(delta_g - delta_e) * m || <= ||p||_inf ||g.m - m||
struct CharacterBound {
  double lhs = 0.0;
  double rhs = 0.0;
};
CharacterBound character_transform_bound(const A0Element& m, const CXFunction& p,
                                         const Word& g);

// ---- approximate diagonals (Thm 9.1) ----
using TensorTerm = std::pair<A0Element, A0Element>;
struct DiagonalDefect {
  double commutator_defect = 0.0;
  double unit_defect = 0.0;
};
DiagonalDefect diagonal_defect(const std::vector<TensorTerm>& d, const A0Element& a);

// ---- serialization ----
nlohmann::json group_to_json(const GroupPtr& g);
GroupPtr group_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const SpacePtr& s);
SpacePtr space_from_json(const nlohmann::json& j);
nlohmann::json a0_to_json(const A0Element& f);
A0Element a0_from_json(const nlohmann::json& j);

}  // namespace amenlab

#include "amenlab/a0.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace amenlab {

A0Element::A0Element(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("null space");
}

A0Element::A0Element(SpacePtr space, std::map<Word, CXFunction> coeff)
    : space_(std::move(space)), coeff_(std::move(coeff)) {
  if (!space_) throw std::invalid_argument("null space");
  normalize();
}

void A0Element::normalize() {
  int d = 0;
  for (auto& [g, p] : coeff_) {
    if (!same_space(p.space(), space_)) throw std::invalid_argument("coefficient on wrong space");
    d = std::max(d, p.depth());
  }
  for (auto it = coeff_.begin(); it != coeff_.end();) {
    if (it->second.sup_norm() < kPruneTol) {
      it = coeff_.erase(it);
    } else {
      if (it->second.depth() < d) it->second = it->second.refined(d);
      ++it;
    }
  }
}

A0Element A0Element::delta(SpacePtr space, const Word& g) {
  A0Element f(space);
  f.coeff_.emplace(g, CXFunction::constant(space, 1.0));
  return f;
}

A0Element A0Element::embed(const CXFunction& p) {
  A0Element f(p.space());
  f.coeff_.emplace(p.space()->group()->identity(), p);
  f.normalize();
  return f;
}

int A0Element::depth() const {
  return coeff_.empty() ? 0 : coeff_.begin()->second.depth();
}

CXFunction A0Element::at(const Word& g) const {
  auto it = coeff_.find(g);
  if (it != coeff_.end()) return it->second;
  return CXFunction::constant(space_, 0.0).refined(depth());
}

void A0Element::set(const Word& g, CXFunction p) {
  coeff_.insert_or_assign(g, std::move(p));
  normalize();
}

A0Element& A0Element::operator+=(const A0Element& o) {
  if (!same_space(space_, o.space_)) throw std::invalid_argument("space mismatch");
  for (const auto& [g, p] : o.coeff_) {
    auto it = coeff_.find(g);
    if (it == coeff_.end())
      coeff_.emplace(g, p);
    else
      it->second += p;
  }
  normalize();
  return *this;
}

A0Element& A0Element::operator-=(const A0Element& o) {
  if (!same_space(space_, o.space_)) throw std::invalid_argument("space mismatch");
  for (const auto& [g, p] : o.coeff_) {
    auto it = coeff_.find(g);
    if (it == coeff_.end())
      coeff_.emplace(g, Complex(-1.0) * p);
    else
      it->second -= p;
  }
  normalize();
  return *this;
}

A0Element& A0Element::operator*=(Complex c) {
  for (auto& [g, p] : coeff_) p *= c;
  normalize();
  return *this;
}

A0Element convolve(const A0Element& f1, const A0Element& f2) {
  if (!same_space(f1.space(), f2.space())) throw std::invalid_argument("space mismatch");
  const auto& group = f1.space()->group();
  std::map<Word, CXFunction> out;
  for (const auto& [h, p] : f1.coeff()) {
    for (const auto& [k, q] : f2.coeff()) {
      Word g = group->multiply(h, k);
      CXFunction term = p * q.translated(h);
      auto it = out.find(g);
      if (it == out.end())
        out.emplace(std::move(g), std::move(term));
      else
        it->second += term;
    }
  }
  return A0Element(f1.space(), std::move(out));
}

double a0_norm(const A0Element& f) {
  if (f.is_zero()) return 0.0;
  int64_t n = f.space()->dim_at(f.depth());
  std::vector<double> acc(n, 0.0);
  for (const auto& [g, p] : f.coeff())
    for (int64_t i = 0; i < n; ++i) acc[i] += std::abs(p[i]);
  return *std::max_element(acc.begin(), acc.end());
}

CXFunction pibar(const A0Element& f) {
  CXFunction s = CXFunction::constant(f.space(), 0.0);
  for (const auto& [g, p] : f.coeff()) s += p;
  return s;
}

double a0_distance(const A0Element& a, const A0Element& b) { return a0_norm(a - b); }

Classification classify(const A0Element& f, double tol) {
  Classification c;
  CXFunction s = pibar(f);
  Complex v0 = s.dim() > 0 ? s[0] : Complex(0.0);
  double dev = 0.0;
  for (int64_t i = 0; i < s.dim(); ++i) dev = std::max(dev, std::abs(s[i] - v0));
  c.in_W0 = dev <= tol;
  if (c.in_W0) {
    c.pi_value = v0;
    c.in_ker_pibar = std::abs(v0) <= tol;
    bool nonneg = true;
    for (const auto& [g, p] : f.coeff())
      for (const auto& z : p.values())
        if (z.real() < -1e-12 || std::abs(z.imag()) > 1e-12) nonneg = false;
    c.in_Z0_plus = nonneg;
  } else {
    c.in_ker_pibar = false;
    c.in_Z0_plus = false;
  }
  return c;
}

double z0_norm(const std::vector<A0Element>& parts, double tol) {
  double s = 0.0;
  for (const auto& f : parts) {
    auto c = classify(f, tol);
    if (!c.in_Z0_plus) throw std::invalid_argument("z0_norm part is not in Z0+");
    s += c.pi_value->real();
  }
  return s;
}

A0Element gamma_act(const Word& g, const A0Element& f) {
  const auto& group = f.space()->group();
  std::map<Word, CXFunction> out;
  for (const auto& [h, p] : f.coeff()) out.emplace(group->multiply(g, h), p.translated(g));
  return A0Element(f.space(), std::move(out));
}

A0Element cx_act(const CXFunction& p, const A0Element& f) {
  std::map<Word, CXFunction> out;
  for (const auto& [h, q] : f.coeff()) out.emplace(h, p * q);
  return A0Element(f.space(), std::move(out));
}

A0Element cx_act_right(const A0Element& f, const CXFunction& p) {
  std::map<Word, CXFunction> out;
  for (const auto& [h, q] : f.coeff()) out.emplace(h, q * p.translated(h));
  return A0Element(f.space(), std::move(out));
}

double l1_norm(const L1Vector& v) {
  double s = 0.0;
  for (const auto& [g, z] : v) s += std::abs(z);
  return s;
}

L1Vector l1_right_translate(const GroupPtr& group, const L1Vector& v, const Word& h) {
  L1Vector out;
  for (const auto& [g, z] : v) out[group->multiply(g, h)] += z;
  return out;
}

namespace {

L1Vector ozawa_impl(const A0Element& e, const std::function<Complex(const CXFunction&)>& eval,
                    double tol) {
  auto c = classify(e, tol);
  if (!c.in_W0 || !c.in_ker_pibar)
    throw std::invalid_argument("ozawa_mean_from_unit needs an element of ker pibar");
  const auto& group = e.space()->group();
  L1Vector out;
  out[group->identity()] = 1.0;
  for (const auto& [g, p] : e.coeff()) out[g] -= eval(p);
  for (auto it = out.begin(); it != out.end();)
    it = std::abs(it->second) < A0Element::kPruneTol ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

L1Vector ozawa_mean_from_unit(const A0Element& e, int point, double tol) {
  return ozawa_impl(e, [&](const CXFunction& p) { return p.value_at_point(point); }, tol);
}

L1Vector ozawa_mean_from_unit(const A0Element& e, const Word& cylinder, double tol) {
  return ozawa_impl(e, [&](const CXFunction& p) { return p.value_at(cylinder); }, tol);
}

A0Element unit_from_mean(const A0Element& m, double tol) {
  auto c = classify(m, tol);
  if (!c.in_W0 || std::abs(*c.pi_value - 1.0) > tol)
    throw std::invalid_argument("unit_from_mean needs pi(m) = 1");
  return A0Element::delta(m.space(), m.space()->group()->identity()) - m;
}

CharacterBound character_transform_bound(const A0Element& m, const CXFunction& p,
                                         const Word& g) {
  const auto& space = m.space();
  A0Element dg = A0Element::delta(space, g);
  A0Element de = A0Element::delta(space, space->group()->identity());
  CharacterBound b;
  b.lhs = a0_norm(convolve(cx_act(p, dg - de), m));
  b.rhs = p.sup_norm() * a0_norm(gamma_act(g, m) - m);
  return b;
}

DiagonalDefect diagonal_defect(const std::vector<TensorTerm>& d, const A0Element& a) {
  DiagonalDefect out;
  // a.d - d.a as a signed term list, merged by matching left factors so the
  // termwise projective upper bound can actually reach zero
  std::vector<TensorTerm> terms;
  for (const auto& [x, y] : d) {
    terms.emplace_back(convolve(a, x), y);
    terms.emplace_back(x, Complex(-1.0) * convolve(y, a));
  }
  std::vector<bool> dead(terms.size(), false);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (dead[j]) continue;
      if (a0_distance(terms[i].first, terms[j].first) <= 1e-12) {
        terms[i].second += terms[j].second;
        dead[j] = true;
      }
    }
  }
  for (size_t i = 0; i < terms.size(); ++i)
    if (!dead[i]) out.commutator_defect += a0_norm(terms[i].first) * a0_norm(terms[i].second);

  A0Element contracted(a.space());
  for (const auto& [x, y] : d) contracted += convolve(x, y);
  out.unit_defect = a0_norm(convolve(a, contracted) - a);
  return out;
}

nlohmann::json group_to_json(const GroupPtr& g) {
  nlohmann::json j;
  switch (g->kind()) {
    case GroupKind::Free:
      j["kind"] = "free";
      j["rank"] = g->rank();
      break;
    case GroupKind::FreeAbelian:
      j["kind"] = "free_abelian";
      j["rank"] = g->rank();
      break;
    case GroupKind::Finite:
      j["kind"] = "finite";
      j["table"] = g->table();
      break;
  }
  return j;
}

GroupPtr group_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind");
  if (kind == "free") return Group::free_group(j.at("rank"));
  if (kind == "free_abelian") return Group::free_abelian(j.at("rank"));
  if (kind == "cyclic") return Group::cyclic(j.at("order"));
  if (kind == "symmetric3") return Group::symmetric3();
  if (kind == "finite")
    return Group::finite(j.at("table").get<std::vector<std::vector<int>>>());
  throw std::invalid_argument("unknown group kind: " + kind);
}

nlohmann::json space_to_json(const SpacePtr& s) {
  nlohmann::json j;
  j["group"] = group_to_json(s->group());
  if (s->is_boundary()) {
    j["kind"] = "boundary";
  } else {
    j["kind"] = "points";
    j["num_points"] = s->num_points();
    j["perms"] = s->generator_perms();
  }
  return j;
}

SpacePtr space_from_json(const nlohmann::json& j) {
  GroupPtr g = group_from_json(j.at("group"));
  std::string kind = j.at("kind");
  if (kind == "boundary") return Space::boundary(g);
  if (kind == "point") return Space::single_point(g);
  if (kind == "group") return Space::group_on_itself(g);
  if (kind == "points")
    return Space::finite_points(g, j.at("perms").get<std::vector<std::vector<int>>>());
  throw std::invalid_argument("unknown space kind: " + kind);
}

nlohmann::json a0_to_json(const A0Element& f) {
  nlohmann::json j;
  j["group"] = group_to_json(f.space()->group());
  j["space"] = space_to_json(f.space());
  j["depth"] = f.depth();
  auto entries = nlohmann::json::array();
  for (const auto& [g, p] : f.coeff()) {
    nlohmann::json e;
    e["word"] = g;
    auto coeffs = nlohmann::json::array();
    for (const auto& z : p.values()) coeffs.push_back({z.real(), z.imag()});
    e["coefficients"] = std::move(coeffs);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

A0Element a0_from_json(const nlohmann::json& j) {
  SpacePtr space = space_from_json(j.at("space"));
  int depth = j.value("depth", 0);
  std::map<Word, CXFunction> coeff;
  for (const auto& e : j.at("entries")) {
    Word g = e.at("word").get<Word>();
    std::vector<Complex> vals;
    for (const auto& z : e.at("coefficients")) vals.emplace_back(z.at(0), z.at(1));
    coeff.emplace(std::move(g), CXFunction(space, depth, std::move(vals)));
  }
  return A0Element(space, std::move(coeff));
}

}  // namespace amenlab

#include "amenlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amenlab {

namespace {

// letter +/-i  <->  index in 0..2k-1, inverse letter flips the low bit
int letter_index(int32_t v) { return 2 * (std::abs(v) - 1) + (v < 0 ? 1 : 0); }
int32_t letter_from_index(int t) { return (t % 2 == 0 ? 1 : -1) * (t / 2 + 1); }

void validate_perm(const std::vector<int>& p, int n) {
  if ((int)p.size() != n) throw std::invalid_argument("permutation has wrong size");
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

}  // namespace

SpacePtr Space::finite_points(GroupPtr group, std::vector<std::vector<int>> perms) {
  if (!group) throw std::invalid_argument("null group");
  auto gens = group->generators();
  if (perms.size() != gens.size())
    throw std::invalid_argument("need one permutation per generator");
  if (perms.empty()) throw std::invalid_argument("empty permutation list");
  const int n = (int)perms[0].size();
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = SpaceKind::FinitePoints;
  s->group_ = group;
  s->npoints_ = n;
  for (auto& p : perms) validate_perm(p, n);
  s->perms_ = std::move(perms);
  s->perm_inverse_.resize(s->perms_.size());
  for (size_t i = 0; i < s->perms_.size(); ++i) {
    s->perm_inverse_[i].resize(n);
    for (int x = 0; x < n; ++x) s->perm_inverse_[i][s->perms_[i][x]] = x;
  }
  // generator lists pair g with g^{-1}; the supplied permutations must agree
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j)
      if (gens[j] == group->inverse(gens[i]) && s->perms_[j] != s->perm_inverse_[i])
        throw std::invalid_argument("inverse generator permutation mismatch");
  // consistency with finite-group relations
  if (group->is_finite()) {
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = 0; j < gens.size(); ++j) {
        Word prod = group->multiply(gens[i], gens[j]);
        for (int x = 0; x < n; ++x)
          if (s->act_point(prod, x) != s->perms_[i][s->perms_[j][x]])
            throw std::invalid_argument("action does not respect group relations");
      }
  }
  return s;
}

SpacePtr Space::single_point(GroupPtr group) {
  std::vector<std::vector<int>> perms(group->generators().size(), std::vector<int>{0});
  return finite_points(std::move(group), std::move(perms));
}

SpacePtr Space::group_on_itself(GroupPtr group) {
  if (!group->is_finite())
    throw std::invalid_argument("group_on_itself needs a finite group");
  const int n = group->order();
  std::vector<std::vector<int>> perms;
  for (const auto& g : group->generators()) {
    std::vector<int> p(n);
    for (int x = 0; x < n; ++x) p[x] = group->finite_multiply(g.at(0), x);
    perms.push_back(std::move(p));
  }
  return finite_points(group, std::move(perms));
}

SpacePtr Space::boundary(GroupPtr free_group) {
  if (!free_group || free_group->kind() != GroupKind::Free)
    throw std::invalid_argument("boundary model needs a free group");
  auto s = std::shared_ptr<Space>(new Space());
  s->kind_ = SpaceKind::BoundaryCylinders;
  s->group_ = std::move(free_group);
  return s;
}

int Space::act_point(const Word& g, int x) const {
  if (kind_ != SpaceKind::FinitePoints)
    throw std::logic_error("act_point on a cylinder space");
  switch (group_->kind()) {
    case GroupKind::Finite: {
      int j = g.at(0);
      if (j == group_->finite_identity()) return x;
      int idx = j < group_->finite_identity() ? j : j - 1;
      return perms_[idx][x];
    }
    case GroupKind::Free: {
      // g = l_1 ... l_m acts as l_1.(l_2.( ... l_m.x))
      for (auto it = g.rbegin(); it != g.rend(); ++it) x = perms_[letter_index(*it)][x];
      return x;
    }
    case GroupKind::FreeAbelian: {
      for (int i = 0; i < group_->rank(); ++i) {
        int e = g.at(i);
        const auto& p = e >= 0 ? perms_[2 * i] : perms_[2 * i + 1];
        for (int t = 0; t < std::abs(e); ++t) x = p[x];
      }
      return x;
    }
  }
  throw std::logic_error("unreachable");
}

int64_t Space::cylinder_count(int depth) const {
  if (kind_ != SpaceKind::BoundaryCylinders)
    throw std::logic_error("cylinder_count on a finite space");
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (depth == 0) return 1;
  const int k = group_->rank();
  int64_t c = 2 * k;
  for (int d = 1; d < depth; ++d) c *= (2 * k - 1);
  return c;
}

Word Space::cylinder_word(int depth, int64_t index) const {
  if (index < 0 || index >= cylinder_count(depth))
    throw std::out_of_range("cylinder index out of range");
  const int k = group_->rank();
  // peel digits in mixed radix: first letter base 2k, later ones base 2k-1
  std::vector<int> ranks(depth);
  for (int j = depth - 1; j >= 1; --j) {
    ranks[j] = (int)(index % (2 * k - 1));
    index /= (2 * k - 1);
  }
  Word w;
  if (depth == 0) return w;
  w.reserve(depth);
  w.push_back(letter_from_index((int)index));
  for (int j = 1; j < depth; ++j) {
    int forbidden = letter_index(w.back()) ^ 1;
    int t = ranks[j] + (ranks[j] >= forbidden ? 1 : 0);
    w.push_back(letter_from_index(t));
  }
  return w;
}

int64_t Space::cylinder_index(const Word& w) const {
  if (kind_ != SpaceKind::BoundaryCylinders)
    throw std::logic_error("cylinder_index on a finite space");
  if (w.empty()) return 0;
  const int k = group_->rank();
  int64_t idx = letter_index(w[0]);
  for (size_t j = 1; j < w.size(); ++j) {
    int forbidden = letter_index(w[j - 1]) ^ 1;
    int t = letter_index(w[j]);
    if (t == forbidden) throw std::invalid_argument("cylinder word is not reduced");
    idx = idx * (2 * k - 1) + (t - (t > forbidden ? 1 : 0));
  }
  return idx;
}

Word Space::act_cylinder(const Word& g, const Word& w) const {
  if (kind_ != SpaceKind::BoundaryCylinders)
    throw std::logic_error("act_cylinder on a finite space");
  if ((int)w.size() < (int)g.size() + 1)
    throw std::invalid_argument("cylinder too shallow for this translation");
  Word c = g;
  c.insert(c.end(), w.begin(), w.end());
  Word r = reduce_free_word(c);
  r.resize(w.size() - g.size());
  return r;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  if (a->kind() == GroupKind::Finite) return a->table() == b->table();
  return a->rank() == b->rank();
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  if (!same_group(a->group(), b->group())) return false;
  if (a->is_boundary()) return true;
  return a->num_points() == b->num_points() && a->generator_perms() == b->generator_perms();
}

bool Space::same_as(const Space& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_ || !same_group(group_, o.group_)) return false;
  if (is_boundary()) return true;
  return npoints_ == o.npoints_ && perms_ == o.perms_;
}

}  // namespace amenlab

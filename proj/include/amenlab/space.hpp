#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "amenlab/group.hpp"

namespace amenlab {

enum class SpaceKind { FinitePoints, BoundaryCylinders };

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Either a finite point set with a generator-wise action, or the depth-d
// cylinder model of the boundary of a free group.  A cylinder is a reduced
// word of exactly length d; a depth-d function is constant on depth-d
// cylinders and evaluable on any deeper cylinder by prefix truncation.
class Space {
public:
  // perms[i] = image of each point under generators()[i] of the group.
  static SpacePtr finite_points(GroupPtr group, std::vector<std::vector<int>> perms);
  static SpacePtr single_point(GroupPtr group);
  // finite group acting on itself by left translation
  static SpacePtr group_on_itself(GroupPtr group);
  // boundary of free(k); functions carry their own depth
  static SpacePtr boundary(GroupPtr free_group);

  SpaceKind kind() const { return kind_; }
  const GroupPtr& group() const { return group_; }
  bool is_boundary() const { return kind_ == SpaceKind::BoundaryCylinders; }

  // ---- finite model ----
  int num_points() const { return npoints_; }
  int act_point(const Word& g, int x) const;
  const std::vector<std::vector<int>>& generator_perms() const { return perms_; }

  // ---- cylinder model ----
  int boundary_rank() const { return group_->rank(); }
  int64_t cylinder_count(int depth) const;
  // index <-> reduced word of length `depth`
  Word cylinder_word(int depth, int64_t index) const;
  int64_t cylinder_index(const Word& w) const;
  // g acting on a cylinder of depth |w|; output depth |w| - |g| (>= 1 required)
  Word act_cylinder(const Word& g, const Word& w) const;

  // number of coefficient slots for a function at the given depth
  int64_t dim_at(int depth) const {
    return kind_ == SpaceKind::FinitePoints ? npoints_ : cylinder_count(depth);
  }

  bool same_as(const Space& o) const;

private:
  Space() = default;
  SpaceKind kind_ = SpaceKind::FinitePoints;
  GroupPtr group_;
  int npoints_ = 0;
  std::vector<std::vector<int>> perms_;          // per generator
  std::vector<std::vector<int>> perm_inverse_;   // per generator
};

bool same_group(const GroupPtr& a, const GroupPtr& b);
bool same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace amenlab

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rtk/error.hpp"
#include "rtk/geometry.hpp"

namespace rtk {

template <typename T>
struct BasicBvhNode {
  BasicAabb<T> bounds;
  // Inner nodes: children. Leaves: contiguous range in BasicBvh::prims.
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::uint32_t first_prim = 0;
  std::uint32_t prim_count = 0;  // 0 marks an inner node
  std::uint8_t split_axis = 0;

  bool is_leaf() const { return prim_count != 0; }
};

/// Bounding volume hierarchy over any primitive type that provides
/// `get_bounds(prim)` and a `scalar_type`. A BVH is itself such a primitive,
/// so hierarchies of hierarchies work out of the box.
template <typename Primitive>
struct BasicBvh {
  using primitive_type = Primitive;
  using scalar_type = typename Primitive::scalar_type;
  using node_type = BasicBvhNode<scalar_type>;

  std::vector<node_type> nodes;  // nodes[0] is the root
  std::vector<Primitive> prims;  // reordered; leaves index contiguous ranges
  std::uint32_t max_leaf_size = 0;

  std::size_t inner_count() const {
    return std::size_t(std::count_if(nodes.begin(), nodes.end(),
                                     [](auto const& n) { return !n.is_leaf(); }));
  }
};

using Bvh = BasicBvh<Triangle>;

template <typename P>
BasicAabb<typename P::scalar_type> get_bounds(BasicBvh<P> const& bvh) {
  return bvh.nodes.empty() ? BasicAabb<typename P::scalar_type>{}
                           : bvh.nodes.front().bounds;
}

template <typename T>
struct is_bvh : std::false_type {};
template <typename P>
struct is_bvh<BasicBvh<P>> : std::true_type {};
template <typename T>
inline constexpr bool is_bvh_v = is_bvh<std::remove_cvref_t<T>>::value;

/// Traversal stack depth; also the depth bound the builder enforces.
inline constexpr std::size_t max_bvh_depth = 64;

/// Build controls. The two cost constants weight the SAH cost reported by
/// sah_cost(); split selection only compares SA(L) N(L) + SA(R) N(R) and
/// is unaffected by them.
struct BuildParams {
  std::uint32_t max_leaf_size = 4;
  std::uint32_t sah_bin_count = 16;
  double traversal_cost = 1.0;
  double intersection_cost = 1.0;
};

namespace detail {

// Beyond this depth the builder only uses median splits, which bounds the
// total depth well below max_bvh_depth for any 32-bit primitive count.
inline constexpr std::uint32_t sah_depth_limit = 28;

template <typename T>
double surface_area_d(BasicAabb<T> const& box) {
  if (box.is_empty()) {
    return 0.0;
  }
  Vec3<double> const e = box.extent().template cast<double>();
  return 2.0 * (e.x() * e.y() + e.x() * e.z() + e.y() * e.z());
}

template <typename T>
struct SahSplit {
  int axis = -1;
  std::uint32_t bin = 0;  // primitives in bins [0, bin] go left
  double cost = 0.0;
};

template <typename T>
SahSplit<T> find_sah_split(std::vector<BasicAabb<T>> const& bounds,
                           std::vector<Vec3<T>> const& centroids,
                           std::vector<std::uint32_t> const& index,
                           std::size_t begin, std::size_t end,
                           BasicAabb<T> const& centroid_bounds,
                           std::uint32_t bin_count) {
  struct Bin {
    BasicAabb<T> box;
    std::size_t count = 0;
  };

  SahSplit<T> best;
  std::vector<Bin> bins(bin_count);
  std::vector<double> right_area(bin_count);
  std::vector<std::size_t> right_count(bin_count);

  for (int axis = 0; axis < 3; ++axis) {
    double const lo = centroid_bounds.min[axis];
    double const extent = double(centroid_bounds.max[axis]) - lo;
    if (!(extent > 0.0)) {
      continue;
    }
    double const scale = bin_count / extent;

    std::fill(bins.begin(), bins.end(), Bin{});
    for (std::size_t i = begin; i < end; ++i) {
      auto const p = index[i];
      auto const b = std::min<std::size_t>(
          bin_count - 1, std::size_t((centroids[p][axis] - lo) * scale));
      bins[b].box = aabb_union(bins[b].box, bounds[p]);
      ++bins[b].count;
    }

    BasicAabb<T> acc;
    std::size_t count = 0;
    for (std::size_t b = bin_count; b-- > 1;) {
      acc = aabb_union(acc, bins[b].box);
      count += bins[b].count;
      right_area[b] = surface_area_d(acc);
      right_count[b] = count;
    }

    acc = BasicAabb<T>{};
    count = 0;
    for (std::size_t b = 0; b + 1 < bin_count; ++b) {
      acc = aabb_union(acc, bins[b].box);
      count += bins[b].count;
      std::size_t const rc = right_count[b + 1];
      if (count == 0 || rc == 0) {
        continue;
      }
      double const cost =
          surface_area_d(acc) * double(count) + right_area[b + 1] * double(rc);
      if (best.axis < 0 || cost < best.cost) {
        best = {axis, std::uint32_t(b), cost};
      }
    }
  }
  return best;
}

}  // namespace detail

/// Top-down binned-SAH build.
///
/// Nodes with at most `max_leaf_size` primitives become leaves. Larger nodes
/// take the (axis, bin boundary) minimizing SA(L) N(L) + SA(R) N(R); when all
/// centroids coincide they are split at the median in array order.
template <typename Primitive>
BasicBvh<Primitive> build_bvh(std::vector<Primitive> prims,
                              BuildParams const& params = {}) {
  using T = typename Primitive::scalar_type;

  if (prims.empty()) {
    throw Error("empty scene");
  }
  if (params.max_leaf_size == 0 || params.sah_bin_count == 0) {
    throw Error("max_leaf_size and sah_bin_count must be positive");
  }
  if (prims.size() > std::size_t(UINT32_MAX)) {
    throw Error("too many primitives");
  }

  std::size_t const n = prims.size();
  std::vector<BasicAabb<T>> bounds(n);
  std::vector<Vec3<T>> centroids(n);
  for (std::size_t i = 0; i < n; ++i) {
    bounds[i] = get_bounds(prims[i]);
    centroids[i] = bounds[i].center();
  }

  std::vector<std::uint32_t> index(n);
  std::iota(index.begin(), index.end(), 0u);

  BasicBvh<Primitive> bvh;
  bvh.max_leaf_size = params.max_leaf_size;
  bvh.nodes.reserve(2 * n / params.max_leaf_size + 1);
  bvh.nodes.emplace_back();

  struct Task {
    std::uint32_t node;
    std::size_t begin;
    std::size_t end;
    std::uint32_t depth;
  };
  std::vector<Task> tasks{{0, 0, n, 1}};

  while (!tasks.empty()) {
    Task const task = tasks.back();
    tasks.pop_back();

    BasicAabb<T> box;
    BasicAabb<T> centroid_box;
    for (std::size_t i = task.begin; i < task.end; ++i) {
      box = aabb_union(box, bounds[index[i]]);
      centroid_box = aabb_grow(centroid_box, centroids[index[i]]);
    }
    bvh.nodes[task.node].bounds = box;

    std::size_t const count = task.end - task.begin;
    if (count <= params.max_leaf_size) {
      auto& leaf = bvh.nodes[task.node];
      leaf.first_prim = std::uint32_t(task.begin);
      leaf.prim_count = std::uint32_t(count);
      continue;
    }

    std::size_t mid = task.begin + count / 2;
    int axis = 0;
    auto const split =
        task.depth < detail::sah_depth_limit
            ? detail::find_sah_split(bounds, centroids, index, task.begin,
                                     task.end, centroid_box, params.sah_bin_count)
            : detail::SahSplit<T>{};
    if (split.axis >= 0) {
      axis = split.axis;
      double const lo = centroid_box.min[axis];
      double const scale =
          params.sah_bin_count / (double(centroid_box.max[axis]) - lo);
      auto const it = std::partition(
          index.begin() + std::ptrdiff_t(task.begin),
          index.begin() + std::ptrdiff_t(task.end), [&](std::uint32_t p) {
            auto const b = std::min<std::size_t>(
                params.sah_bin_count - 1,
                std::size_t((centroids[p][axis] - lo) * scale));
            return b <= split.bin;
          });
      mid = std::size_t(it - index.begin());
    } else {
      Vec3<T> const e = box.extent();
      e.maxCoeff(&axis);
    }

    auto const left = std::uint32_t(bvh.nodes.size());
    bvh.nodes.emplace_back();
    bvh.nodes.emplace_back();
    auto& inner = bvh.nodes[task.node];
    inner.left = left;
    inner.right = left + 1;
    inner.split_axis = std::uint8_t(axis);

    tasks.push_back({left + 1, mid, task.end, task.depth + 1});
    tasks.push_back({left, task.begin, mid, task.depth + 1});
  }

  bvh.prims.reserve(n);
  for (auto const i : index) {
    bvh.prims.push_back(std::move(prims[i]));
  }
  return bvh;
}

/// Checks every structural invariant. Returns one message per violation;
/// an empty result means the hierarchy is valid.
template <typename Primitive>
std::vector<std::string> validate_bvh(BasicBvh<Primitive> const& bvh,
                                      double prim_slack = 1e-5) {
  using T = typename Primitive::scalar_type;
  std::vector<std::string> issues;
  auto report = [&](std::size_t node, std::string const& what) {
    issues.push_back("node " + std::to_string(node) + ": " + what);
  };

  if (bvh.nodes.empty()) {
    issues.emplace_back("no nodes");
    return issues;
  }

  std::vector<int> visits(bvh.nodes.size(), 0);
  std::vector<int> prim_cover(bvh.prims.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 1}};
  std::size_t max_depth = 0;

  while (!stack.empty()) {
    auto const [id, depth] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, depth);

    if (++visits[id] > 1) {
      report(id, "reached more than once (cycle or shared child)");
      continue;
    }
    auto const& node = bvh.nodes[id];
    if (node.bounds.is_empty()) {
      report(id, "empty bounds");
    }

    if (node.is_leaf()) {
      if (bvh.max_leaf_size != 0 && node.prim_count > bvh.max_leaf_size) {
        report(id, "leaf holds " + std::to_string(node.prim_count) +
                       " primitives, limit " + std::to_string(bvh.max_leaf_size));
      }
      std::size_t const first = node.first_prim;
      std::size_t const last = first + node.prim_count;
      if (last > bvh.prims.size()) {
        report(id, "primitive range out of bounds");
        continue;
      }
      for (std::size_t i = first; i < last; ++i) {
        ++prim_cover[i];
        if (!contains(node.bounds, get_bounds(bvh.prims[i]), T(prim_slack))) {
          report(id, "primitive " + std::to_string(i) + " exceeds leaf bounds");
        }
      }
      continue;
    }

    for (std::uint32_t child : {node.left, node.right}) {
      if (child >= bvh.nodes.size() || child == 0) {
        report(id, "child index " + std::to_string(child) + " invalid");
        continue;
      }
      if (!contains(node.bounds, bvh.nodes[child].bounds)) {
        report(id, "bounds do not contain child " + std::to_string(child));
      }
      stack.emplace_back(child, depth + 1);
    }
    if (node.split_axis > 2) {
      report(id, "split axis out of range");
    }
  }

  for (std::size_t i = 0; i < visits.size(); ++i) {
    if (visits[i] == 0) {
      report(i, "unreachable from root");
    }
  }
  for (std::size_t i = 0; i < prim_cover.size(); ++i) {
    if (prim_cover[i] != 1) {
      issues.push_back("primitive " + std::to_string(i) + " referenced by " +
                       std::to_string(prim_cover[i]) + " leaves");
    }
  }
  if (max_depth > max_bvh_depth) {
    issues.push_back("depth " + std::to_string(max_depth) + " exceeds " +
                     std::to_string(max_bvh_depth));
  }
  return issues;
}

/// Expected cost of a random ray under the surface area heuristic:
/// traversal_cost per inner node plus intersection_cost per leaf primitive,
/// each weighted by its bounds' area relative to the root.
template <typename Primitive>
double sah_cost(BasicBvh<Primitive> const& bvh, BuildParams const& params = {}) {
  if (bvh.nodes.empty()) {
    return 0.0;
  }
  double const root_area = detail::surface_area_d(bvh.nodes.front().bounds);
  if (!(root_area > 0.0)) {
    return 0.0;
  }
  double cost = 0.0;
  for (auto const& node : bvh.nodes) {
    double const rel = detail::surface_area_d(node.bounds) / root_area;
    cost += node.is_leaf() ? params.intersection_cost * node.prim_count * rel
                           : params.traversal_cost * rel;
  }
  return cost;
}

/// Depth of the tree; a single leaf has depth 1.
template <typename Primitive>
std::size_t bvh_depth(BasicBvh<Primitive> const& bvh) {
  if (bvh.nodes.empty()) {
    return 0;
  }
  std::size_t depth = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    auto const [id, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    auto const& node = bvh.nodes[id];
    if (!node.is_leaf()) {
      stack.emplace_back(node.left, d + 1);
      stack.emplace_back(node.right, d + 1);
    }
  }
  return depth;
}

}  // namespace rtk

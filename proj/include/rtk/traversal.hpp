#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rtk/bvh.hpp"
#include "rtk/error.hpp"
#include "rtk/geometry.hpp"
#include "rtk/intersect.hpp"
#include "rtk/intersector.hpp"

namespace rtk {

/// The `capacity` smallest-t hits seen so far, sorted ascending by t.
template <typename T>
class HitBuffer {
 public:
  explicit HitBuffer(std::size_t capacity) : capacity_(capacity) {
    hits_.reserve(capacity);
  }

  bool full() const { return hits_.size() == capacity_; }
  T worst_t() const { return hits_.back().t; }

  void insert(BasicHitRecord<T> const& hr) {
    if (capacity_ == 0) {
      return;
    }
    if (full()) {
      if (!(hr.t < hits_.back().t)) {
        return;
      }
      hits_.pop_back();
    }
    auto const pos = std::upper_bound(
        hits_.begin(), hits_.end(), hr.t,
        [](T t, BasicHitRecord<T> const& h) { return t < h.t; });
    hits_.insert(pos, hr);
  }

  std::vector<BasicHitRecord<T>> const& hits() const& { return hits_; }
  std::vector<BasicHitRecord<T>> hits() && { return std::move(hits_); }

 private:
  std::size_t capacity_;
  std::vector<BasicHitRecord<T>> hits_;
};

template <typename P, typename I>
BasicHitRecord<typename P::scalar_type> intersect_bvh_closest(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect);
template <typename P, typename I>
BasicHitRecord<typename P::scalar_type> intersect_bvh_any(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect);
template <typename P, typename I>
std::vector<BasicHitRecord<typename P::scalar_type>> intersect_bvh_multi(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect,
    std::size_t n);

namespace detail {

/// While-while traversal.
///
/// The root box is tested once up front. The inner loop descends through
/// inner nodes, testing both children with the box hook, continuing with the
/// nearer child and pushing the farther one. The leaf loop hands each
/// primitive to `visit(prim, ray)`, which may shrink ray.tmax and returns
/// true to terminate the traversal. Popped nodes whose entry point now lies
/// beyond ray.tmax are skipped without another box test.
template <typename P, typename I, typename Visit>
void traverse(BasicRay<typename P::scalar_type>& ray, BasicBvh<P> const& bvh,
              I& isect, Visit&& visit) {
  using T = typename P::scalar_type;

  if (bvh.nodes.empty()) {
    return;
  }
  auto const& nodes = bvh.nodes;
  Vec3<T> const inv_dir = inverse_direction(ray);

  BasicBoxHit<T> const root = isect(ray, nodes[0].bounds, inv_dir);
  if (!root.hit) {
    return;
  }

  struct Entry {
    std::uint32_t node;
    T tenter;
  };
  std::array<Entry, max_bvh_depth> stack;
  std::size_t top = 0;

  auto pop = [&](std::uint32_t& node) {
    while (top > 0) {
      Entry const e = stack[--top];
      if (e.tenter <= ray.tmax) {
        node = e.node;
        return true;
      }
    }
    return false;
  };

  std::uint32_t node = 0;
  for (;;) {
    bool have_leaf = true;
    while (!nodes[node].is_leaf()) {
      auto const& inner = nodes[node];
      bool const right_first = ray.direction[inner.split_axis] < T(0);
      std::uint32_t const near_id = right_first ? inner.right : inner.left;
      std::uint32_t const far_id = right_first ? inner.left : inner.right;

      BasicBoxHit<T> const near_hit = isect(ray, nodes[near_id].bounds, inv_dir);
      BasicBoxHit<T> const far_hit = isect(ray, nodes[far_id].bounds, inv_dir);

      if (near_hit.hit && far_hit.hit) {
        if (top == stack.size()) {
          throw Error("BVH too deep");
        }
        stack[top++] = {far_id, std::max(far_hit.tnear, ray.tmin)};
        node = near_id;
      } else if (near_hit.hit) {
        node = near_id;
      } else if (far_hit.hit) {
        node = far_id;
      } else if (!pop(node)) {
        have_leaf = false;
        break;
      }
    }
    if (!have_leaf) {
      return;
    }

    // Found a leaf.
    auto const& leaf = nodes[node];
    for (std::uint32_t i = 0; i < leaf.prim_count; ++i) {
      if (visit(bvh.prims[leaf.first_prim + i], ray)) {
        return;
      }
    }

    if (!pop(node)) {
      return;
    }
  }
}

}  // namespace detail

/// Closest accepted hit. The intersector's box and primitive hooks replace
/// both kernel call sites of the traversal; nested BVH primitives are
/// traversed in place with the same intersector.
template <typename P, typename I>
BasicHitRecord<typename P::scalar_type> intersect_bvh_closest(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect) {
  using T = typename P::scalar_type;
  BasicHitRecord<T> best;
  detail::traverse(ray, bvh, isect, [&](P const& prim, BasicRay<T>& r) {
    BasicHitRecord<T> hr;
    if constexpr (is_bvh_v<P>) {
      hr = intersect_bvh_closest(r, prim, isect);
    } else {
      hr = isect(r, prim);
    }
    if (hr.hit && hr.t < best.t) {
      best = hr;
      r.tmax = hr.t;
    }
    return false;
  });
  return best;
}

/// Some accepted hit; the traversal stops at the first one it meets.
template <typename P, typename I>
BasicHitRecord<typename P::scalar_type> intersect_bvh_any(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect) {
  using T = typename P::scalar_type;
  BasicHitRecord<T> result;
  detail::traverse(ray, bvh, isect, [&](P const& prim, BasicRay<T>& r) {
    if constexpr (is_bvh_v<P>) {
      result = intersect_bvh_any(r, prim, isect);
    } else {
      result = isect(r, prim);
    }
    return result.hit;
  });
  if (!result.hit) {
    return {};
  }
  return result;
}

/// The n smallest-t accepted hits, sorted ascending by t. Once n hits are
/// buffered, ray.tmax shrinks to the worst buffered t.
template <typename P, typename I>
std::vector<BasicHitRecord<typename P::scalar_type>> intersect_bvh_multi(
    BasicRay<typename P::scalar_type> ray, BasicBvh<P> const& bvh, I&& isect,
    std::size_t n) {
  using T = typename P::scalar_type;
  if (n == 0) {
    throw Error("multi-hit query needs n >= 1");
  }
  HitBuffer<T> buffer(n);
  detail::traverse(ray, bvh, isect, [&](P const& prim, BasicRay<T>& r) {
    if constexpr (is_bvh_v<P>) {
      for (auto const& hr : intersect_bvh_multi(r, prim, isect, n)) {
        buffer.insert(hr);
      }
    } else {
      auto const hr = isect(r, prim);
      if (hr.hit) {
        buffer.insert(hr);
      }
    }
    if (buffer.full()) {
      r.tmax = std::min(r.tmax, buffer.worst_t());
    }
    return false;
  });
  return std::move(buffer).hits();
}

}  // namespace rtk

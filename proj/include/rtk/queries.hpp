#pragma once

#include <cstddef>
#include <iterator>
#include <ranges>
#include <type_traits>
#include <utility>
#include <vector>

#include "rtk/bvh.hpp"
#include "rtk/error.hpp"
#include "rtk/geometry.hpp"
#include "rtk/intersector.hpp"
#include "rtk/traversal.hpp"

// Visibility queries over primitive sequences.
//
// A sequence holds either plain primitives or BVHs. Plain primitives are
// handed to the intersector's primitive hook one by one. BVH elements are
// traversed in place and the intersector is passed into the traversal, where
// it replaces the box and primitive tests; it is never applied to the BVH as
// a whole. The choice is made at compile time from the element type.
//
// Every element is tested against the query ray as given; tmax is not
// shrunk between elements of the sequence.

namespace rtk {

/// Closest-hit traversal under the name of the primitive test, so a BVH can
/// be handed to anything that expects `intersect(ray, prim)`.
template <typename P, typename I = DefaultIntersector>
BasicHitRecord<typename P::scalar_type> intersect(
    BasicRay<typename P::scalar_type> const& ray, BasicBvh<P> const& bvh,
    I&& isect = {}) {
  return intersect_bvh_closest(ray, bvh, std::forward<I>(isect));
}

namespace detail {

template <typename T, typename P, typename I>
BasicHitRecord<T> closest_one(BasicRay<T> const& ray, P const& prim, I& isect) {
  if constexpr (is_bvh_v<P>) {
    return intersect_bvh_closest(ray, prim, isect);
  } else {
    return isect(ray, prim);
  }
}

template <typename T, typename P, typename I>
BasicHitRecord<T> any_one(BasicRay<T> const& ray, P const& prim, I& isect) {
  if constexpr (is_bvh_v<P>) {
    return intersect_bvh_any(ray, prim, isect);
  } else {
    return isect(ray, prim);
  }
}

template <typename T, typename P, typename I>
void multi_one(BasicRay<T> const& ray, P const& prim, I& isect, std::size_t n,
               HitBuffer<T>& buffer) {
  if constexpr (is_bvh_v<P>) {
    for (auto const& hr : intersect_bvh_multi(ray, prim, isect, n)) {
      buffer.insert(hr);
    }
  } else {
    auto const hr = isect(ray, prim);
    if (hr.hit) {
      buffer.insert(hr);
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closest hit
// ---------------------------------------------------------------------------

template <typename T, std::input_iterator It, typename I>
BasicHitRecord<T> closest_hit(BasicRay<T> const& ray, It first, It last,
                              I&& isect) {
  BasicHitRecord<T> best;
  for (; first != last; ++first) {
    auto const hr = detail::closest_one(ray, *first, isect);
    if (hr.hit && hr.t < best.t) {
      best = hr;
    }
  }
  return best;
}

template <typename T, std::input_iterator It>
BasicHitRecord<T> closest_hit(BasicRay<T> const& ray, It first, It last) {
  return closest_hit(ray, first, last, detail::KernelCalls{});
}

template <typename T, std::ranges::input_range R, typename I>
BasicHitRecord<T> closest_hit(BasicRay<T> const& ray, R const& prims,
                              I&& isect) {
  return closest_hit(ray, std::ranges::begin(prims), std::ranges::end(prims),
                     std::forward<I>(isect));
}

template <typename T, std::ranges::input_range R>
BasicHitRecord<T> closest_hit(BasicRay<T> const& ray, R const& prims) {
  return closest_hit(ray, prims, detail::KernelCalls{});
}

// ---------------------------------------------------------------------------
// Any hit
// ---------------------------------------------------------------------------

/// First accepted hit in sequence order; within a BVH element, the first one
/// the traversal meets.
template <typename T, std::input_iterator It, typename I>
BasicHitRecord<T> any_hit(BasicRay<T> const& ray, It first, It last,
                          I&& isect) {
  for (; first != last; ++first) {
    auto const hr = detail::any_one(ray, *first, isect);
    if (hr.hit) {
      return hr;
    }
  }
  return {};
}

template <typename T, std::input_iterator It>
BasicHitRecord<T> any_hit(BasicRay<T> const& ray, It first, It last) {
  return any_hit(ray, first, last, detail::KernelCalls{});
}

template <typename T, std::ranges::input_range R, typename I>
BasicHitRecord<T> any_hit(BasicRay<T> const& ray, R const& prims, I&& isect) {
  return any_hit(ray, std::ranges::begin(prims), std::ranges::end(prims),
                 std::forward<I>(isect));
}

template <typename T, std::ranges::input_range R>
BasicHitRecord<T> any_hit(BasicRay<T> const& ray, R const& prims) {
  return any_hit(ray, prims, detail::KernelCalls{});
}

// ---------------------------------------------------------------------------
// Multi hit
// ---------------------------------------------------------------------------

/// The n smallest-t accepted hits of the whole sequence, ascending by t.
template <typename T, std::input_iterator It, typename I>
std::vector<BasicHitRecord<T>> multi_hit(BasicRay<T> const& ray, It first,
                                         It last, I&& isect, std::size_t n) {
  if (n == 0) {
    throw Error("multi-hit query needs n >= 1");
  }
  HitBuffer<T> buffer(n);
  for (; first != last; ++first) {
    detail::multi_one(ray, *first, isect, n, buffer);
  }
  return std::move(buffer).hits();
}

template <typename T, std::input_iterator It>
std::vector<BasicHitRecord<T>> multi_hit(BasicRay<T> const& ray, It first,
                                         It last, std::size_t n) {
  return multi_hit(ray, first, last, detail::KernelCalls{}, n);
}

template <typename T, std::ranges::input_range R, typename I>
  requires(!std::is_integral_v<std::remove_cvref_t<I>>)
std::vector<BasicHitRecord<T>> multi_hit(BasicRay<T> const& ray, R const& prims,
                                         I&& isect, std::size_t n) {
  return multi_hit(ray, std::ranges::begin(prims), std::ranges::end(prims),
                   std::forward<I>(isect), n);
}

template <typename T, std::ranges::input_range R>
std::vector<BasicHitRecord<T>> multi_hit(BasicRay<T> const& ray, R const& prims,
                                         std::size_t n) {
  return multi_hit(ray, prims, detail::KernelCalls{}, n);
}

}  // namespace rtk

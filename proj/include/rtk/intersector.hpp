#pragma once

#include <concepts>
#include <utility>

#include "rtk/geometry.hpp"
#include "rtk/intersect.hpp"

namespace rtk {

/// Base class for custom intersectors (CRTP).
///
/// The base provides a catch-all call operator that forwards every hook to
/// the `intersect` customization point, found by ordinary and argument
/// dependent lookup. A derived intersector overrides individual hooks by
/// adding call operator overloads and re-exporting the base ones:
///
/// \code
/// struct MyIntersector : rtk::BasicIntersector<MyIntersector> {
///   using rtk::BasicIntersector<MyIntersector>::operator();
///
///   rtk::HitRecord operator()(rtk::Ray const& ray, rtk::Triangle const& tri) {
///     auto hr = intersect(ray, tri);
///     hr.hit &= ...;
///     return hr;
///   }
/// };
/// \endcode
///
/// Queries and BVH traversal are templates over the intersector type, so the
/// chosen hook is bound at compile time and a default intersector compiles
/// down to the plain kernel calls.
template <typename Derived>
struct BasicIntersector {
  template <typename R, typename P, typename... Args>
  auto operator()(R const& ray, P const& prim, Args&&... args) const
      -> decltype(intersect(ray, prim, std::forward<Args>(args)...)) {
    return intersect(ray, prim, std::forward<Args>(args)...);
  }

 protected:
  Derived& derived() { return static_cast<Derived&>(*this); }
  Derived const& derived() const { return static_cast<Derived const&>(*this); }
};

/// Forwards every hook verbatim to the default kernels.
struct DefaultIntersector : BasicIntersector<DefaultIntersector> {};

namespace detail {

/// Plain kernel calls outside the intersector hierarchy; the query overloads
/// that take no intersector use this.
struct KernelCalls {
  template <typename R, typename P, typename... Args>
  auto operator()(R const& ray, P const& prim, Args&&... args) const
      -> decltype(intersect(ray, prim, std::forward<Args>(args)...)) {
    return intersect(ray, prim, std::forward<Args>(args)...);
  }
};

}  // namespace detail

/// An intersector usable on primitives of type P with rays of type R.
template <typename I, typename R, typename P>
concept PrimitiveHook = requires(I& isect, R const& ray, P const& prim) {
  { isect(ray, prim) };
};

/// An intersector usable in BVH traversal: it must also test boxes.
template <typename I, typename T>
concept BoxHook = requires(I& isect, BasicRay<T> const& ray,
                           BasicAabb<T> const& box, Vec3<T> const& inv_dir) {
  { isect(ray, box, inv_dir) } -> std::convertible_to<BasicBoxHit<T>>;
};

}  // namespace rtk

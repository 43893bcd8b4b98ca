#pragma once

#include <stdexcept>
#include <string>

namespace rtk {

/// Raised for invalid scenes, malformed input files and broken BVH invariants.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rtk

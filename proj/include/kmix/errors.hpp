#pragma once

#include <stdexcept>

namespace kmix {

/// A dense or enumerative operation would exceed its configured size cap.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// An operator maps amplitude out of a subspace it was required to preserve.
struct LeakageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kmix

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace duplex {

// Requested FD receive/transmit split leaves one direction without antennas.
class FdSplitOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Cholesky of I + c·HH* failed; this cannot happen for valid inputs.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search was asked to range over an empty set of relay splits.
class EmptyDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Least-squares slope fit rejected on its coefficient of determination.
class FitUnstable : public std::runtime_error {
 public:
  FitUnstable(const std::string& what, double r_squared)
      : std::runtime_error(what), r_squared_(r_squared) {}
  double r_squared() const noexcept { return r_squared_; }

 private:
  double r_squared_;
};

}  // namespace duplex

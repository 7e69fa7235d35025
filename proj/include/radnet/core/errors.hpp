// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace radnet {

// Shape/dimension mismatches; message names the offending shapes.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Violated preconditions other than shapes.
struct ContractError : std::logic_error {
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// Non-finite values where finite ones are required.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

#define RN_CHECK(cond, msg)                          \
  do {                                               \
    if (!(cond)) throw ::radnet::ContractError(msg); \
  } while (0)

#define RN_SHAPE_CHECK(cond, msg)                 \
  do {                                            \
    if (!(cond)) throw ::radnet::ShapeError(msg); \
  } while (0)

}  // namespace radnet

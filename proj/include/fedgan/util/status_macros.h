// Copyright 2026 The FedGAN Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDGAN_UTIL_STATUS_MACROS_H_
#define FEDGAN_UTIL_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define FEDGAN_STATUS_CONCAT_INNER_(x, y) x##y
#define FEDGAN_STATUS_CONCAT_(x, y) FEDGAN_STATUS_CONCAT_INNER_(x, y)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _fedgan_status = (expr); \
    if (!_fedgan_status.ok()) {                \
      return _fedgan_status;                   \
    }                                          \
  } while (0)

#define FEDGAN_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                  \
  if (!statusor.ok()) {                                     \
    return statusor.status();                               \
  }                                                         \
  lhs = std::move(statusor).value()

// Evaluates an expression returning absl::StatusOr<T>; on error returns the
// status from the enclosing function, otherwise assigns the value to `lhs`.
#define ASSIGN_OR_RETURN(lhs, rexpr)                                      \
  FEDGAN_ASSIGN_OR_RETURN_IMPL_(                                          \
      FEDGAN_STATUS_CONCAT_(_fedgan_statusor_, __LINE__), lhs, rexpr)

#endif  // FEDGAN_UTIL_STATUS_MACROS_H_

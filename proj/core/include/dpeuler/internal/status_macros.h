// Copyright 2026 The dpeuler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPEULER_INTERNAL_STATUS_MACROS_H_
#define DPEULER_INTERNAL_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPEULER_RETURN_IF_ERROR(expr)            \
  do {                                           \
    const absl::Status _dpeuler_status = (expr); \
    if (!_dpeuler_status.ok()) {                 \
      return _dpeuler_status;                    \
    }                                            \
  } while (false)

#define DPEULER_STATUS_CONCAT_INNER(a, b) a##b
#define DPEULER_STATUS_CONCAT(a, b) DPEULER_STATUS_CONCAT_INNER(a, b)

#define DPEULER_ASSIGN_OR_RETURN(lhs, expr) \
  DPEULER_ASSIGN_OR_RETURN_IMPL(            \
      DPEULER_STATUS_CONCAT(_dpeuler_statusor_, __LINE__), lhs, expr)

#define DPEULER_ASSIGN_OR_RETURN_IMPL(statusor, lhs, expr) \
  auto statusor = (expr);                                  \
  if (!statusor.ok()) {                                    \
    return std::move(statusor).status();                   \
  }                                                        \
  lhs = std::move(statusor).value()

#endif  // DPEULER_INTERNAL_STATUS_MACROS_H_

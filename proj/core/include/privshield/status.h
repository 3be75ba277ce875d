// Copyright 2026 The privshield Authors
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

#ifndef PRIVSHIELD_STATUS_H_
#define PRIVSHIELD_STATUS_H_

#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace privshield {

// Error categories. The command-line tool maps each category to its own
// exit code, so library code should only produce errors through these.
//
//   argument       malformed call: empty question list, shape mismatch, ...
//   configuration  inconsistent setup: vocabulary without refusal term,
//                  missing template, scorer/image dimension mismatch
//   data           missing or malformed files, manifest invariant violations
//   numeric        non-finite values during optimization
inline absl::Status ArgumentError(absl::string_view message) {
  return absl::InvalidArgumentError(message);
}
inline absl::Status ConfigurationError(absl::string_view message) {
  return absl::FailedPreconditionError(message);
}
inline absl::Status DataError(absl::string_view message) {
  return absl::DataLossError(message);
}
inline absl::Status NumericError(absl::string_view message) {
  return absl::AbortedError(message);
}

inline bool IsArgumentError(const absl::Status& s) {
  return absl::IsInvalidArgument(s) || absl::IsFailedPrecondition(s);
}
inline bool IsDataError(const absl::Status& s) {
  return absl::IsDataLoss(s) || absl::IsNotFound(s);
}
inline bool IsNumericError(const absl::Status& s) { return absl::IsAborted(s); }

}  // namespace privshield

#define PRIVSHIELD_CONCAT_INNER_(a, b) a##b
#define PRIVSHIELD_CONCAT_(a, b) PRIVSHIELD_CONCAT_INNER_(a, b)

#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _status = (expr);       \
    if (!_status.ok()) return _status;         \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = std::move(statusor).value()

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(PRIVSHIELD_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // PRIVSHIELD_STATUS_H_

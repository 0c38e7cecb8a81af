// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loglift {

enum class ErrorKind {
  NotARepository,
  EmptyRepository,
  GitFailure,
  UnparsableFile,
  NonConsecutiveSequence,
  EmptyModel,
  OutOfRange,
  EmptyHistogram,
  InvalidConfig,
  Io,
  StaleSpan,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace loglift

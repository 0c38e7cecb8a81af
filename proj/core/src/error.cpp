// SPDX-License-Identifier: Apache-2.0

#include "loglift/error.hpp"

namespace loglift {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotARepository: return "NotARepository";
    case ErrorKind::EmptyRepository: return "EmptyRepository";
    case ErrorKind::GitFailure: return "GitFailure";
    case ErrorKind::UnparsableFile: return "UnparsableFile";
    case ErrorKind::NonConsecutiveSequence: return "NonConsecutiveSequence";
    case ErrorKind::EmptyModel: return "EmptyModel";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyHistogram: return "EmptyHistogram";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    case ErrorKind::StaleSpan: return "StaleSpan";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace loglift

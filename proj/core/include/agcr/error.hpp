#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace agcr {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorCode : std::uint8_t {
  kInvalidArgument,
  kIo,
  kUnsupportedFormat,
  kUnsupportedOperation,
  kCorrupt,
  kBackend,
  kInternal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown while parsing container bytes. Carries the byte offset at which the
/// inconsistency was detected.
class CorruptError : public Error {
 public:
  CorruptError(const std::string& message, std::uint64_t offset)
      : Error(ErrorCode::kCorrupt,
              message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace agcr

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace selfsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : Error { using Error::Error; };
struct FamilyMismatch : Error { using Error::Error; };
struct UnsupportedLevel : Error { using Error::Error; };
struct UnsupportedOperation : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct StatisticsUndefined : Error { using Error::Error; };
struct EmbeddingError : Error { using Error::Error; };
struct UnsupportedVertex : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };

// Raised before an exponential computation starts; `required` is the size that
// would have been needed (cycle rank, vertex count, ...).
struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, std::uint64_t required_, std::uint64_t limit_)
      : Error(what + " (required " + std::to_string(required_) + ", limit " +
              std::to_string(limit_) + ")"),
        required(required_),
        limit(limit_) {}
  std::uint64_t required;
  std::uint64_t limit;
};

}  // namespace selfsim

#pragma once

#include "chipfire/error.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace chipfire {

/// Work limit for the exact searches. One node is one q-reduction (a rank
/// subcall) or one divisor visited by a class enumeration. Exceeding either
/// limit raises BudgetExceeded; nothing is ever silently approximated.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultNodes = 10'000'000;

  explicit Budget(std::uint64_t max_nodes = kDefaultNodes, std::optional<double> max_seconds = std::nullopt)
      : max_nodes_(max_nodes), max_seconds_(max_seconds), start_(std::chrono::steady_clock::now()) {}

  void charge(std::uint64_t nodes = 1) {
    used_ += nodes;
    if (used_ > max_nodes_)
      throw Error(ErrorKind::BudgetExceeded, "node budget of " + std::to_string(max_nodes_) + " exhausted");
    if (max_seconds_ && (used_ & 0xff) == 0 && elapsed_seconds() > *max_seconds_)
      throw Error(ErrorKind::BudgetExceeded, "wall-clock budget of " + std::to_string(*max_seconds_) + " s exhausted");
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t max_nodes() const { return max_nodes_; }

  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::uint64_t max_nodes_;
  std::optional<double> max_seconds_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t used_ = 0;
};

inline void charge(Budget* budget, std::uint64_t nodes = 1) {
  if (budget) budget->charge(nodes);
}

}  // namespace chipfire

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace treelab {

/// Raised when a request exceeds a configured search budget. When the
/// operation had already established a bound, it is carried along.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what, std::optional<std::size_t> lower_bound = std::nullopt)
      : std::runtime_error(what), lower_bound_(lower_bound) {}
  std::optional<std::size_t> lower_bound() const { return lower_bound_; }

 private:
  std::optional<std::size_t> lower_bound_;
};

}  // namespace treelab

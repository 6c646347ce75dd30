// Error type shared by every pfree module.

#ifndef PFREE_ERROR_HPP_
#define PFREE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfree {

  enum class ErrorKind {
    alphabet_mismatch,
    domain,
    resource_cap,
    incomplete_data,
    containment,
    ambient_violation,
    invalid_subsemigroup,
    unique_products_violation,
    regularity_unverified,
    inconclusive,
    parse,
  };

  constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::alphabet_mismatch:
        return "alphabet-mismatch";
      case ErrorKind::domain:
        return "domain";
      case ErrorKind::resource_cap:
        return "resource-cap";
      case ErrorKind::incomplete_data:
        return "incomplete-data";
      case ErrorKind::containment:
        return "containment";
      case ErrorKind::ambient_violation:
        return "ambient-violation";
      case ErrorKind::invalid_subsemigroup:
        return "invalid-subsemigroup";
      case ErrorKind::unique_products_violation:
        return "unique-products-violation";
      case ErrorKind::regularity_unverified:
        return "regularity-unverified";
      case ErrorKind::inconclusive:
        return "inconclusive";
      case ErrorKind::parse:
        return "parse";
    }
    return "unknown";
  }

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept {
      return kind_;
    }

   private:
    ErrorKind kind_;
  };

}  // namespace pfree

#endif  // PFREE_ERROR_HPP_

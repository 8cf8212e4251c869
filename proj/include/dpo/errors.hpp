#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpo {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// restrict_graph() was asked to keep an edge while dropping one of its
// endpoints.
struct DanglingRestriction : Error {
  explicit DanglingRestriction(std::string edge_id)
      : Error("restriction would dangle: kept edge '" + edge_id +
              "' loses an endpoint"),
        edge(std::move(edge_id)) {}
  std::string edge;
};

// compose() saw a value of the inner morphism that the outer morphism does
// not map.
struct DomainMismatch : Error {
  using Error::Error;
};

// An operation that requires an injective morphism got a non-injective one.
struct NotInjective : Error {
  using Error::Error;
};

// is_pushout() only decides squares whose span legs are injective.
struct NotInjectiveSpan : Error {
  using Error::Error;
};

// A rewrite was attempted at a match that fails the dangling condition.
struct DanglingViolation : Error {
  using Error::Error;
};

// A cocone admitted more than one mediating morphism.
struct NonUniqueMediator : Error {
  explicit NonUniqueMediator(std::size_t n)
      : Error("cocone admits " + std::to_string(n) + " mediating morphisms"),
        count(n) {}
  std::size_t count;
};

// The universal-property check ran past its configured candidate budget.
struct BoundTooLarge : Error {
  using Error::Error;
};

}  // namespace dpo

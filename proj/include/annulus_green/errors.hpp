#pragma once

#include <stdexcept>
#include <string>

namespace annulus_green {

/// Input outside the domain of an operation (bad dimension, radius out of range, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation at coincident points of a kernel singular on the diagonal.
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

/// Equal radii: neither branch of the Newton-kernel expansion applies.
class BranchError : public std::domain_error {
 public:
  explicit BranchError(const std::string& what) : std::domain_error(what) {}
};

/// The Robin function evaluated on the boundary, where the regular part blows up.
class DivergenceError : public std::domain_error {
 public:
  explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

/// A stencil or probe ball does not fit inside the annulus.
class GeometryError : public std::domain_error {
 public:
  explicit GeometryError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace annulus_green

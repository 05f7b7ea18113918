#pragma once

#include <stdexcept>
#include <string>

namespace gmfg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed edge lists and lookups of edges that do not exist.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the domain of a Hamiltonian or coupling.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Second partials requested at a point where they are not defined (kinks).
class NonDifferentiablePoint : public Error {
 public:
  using Error::Error;
};

// Invalid model parameters.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Blow-up or positivity loss inside an integrator.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmfg

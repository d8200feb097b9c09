#ifndef ETAFLOW_ERRORS_HPP
#define ETAFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace etaflow {

// A boundary weight sits (numerically) on an integer, so the operator in
// question has a kernel and the closed formulas for eta/index do not apply.
class degeneracy_error : public std::runtime_error {
 public:
  explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

// The transmission structure is outside the class we can reduce to
// arithmetic progressions (neither a weighted permutation nor equal lengths).
class unsupported_structure_error : public std::runtime_error {
 public:
  explicit unsupported_structure_error(const std::string& what) : std::runtime_error(what) {}
};

// A level-set query left the neighborhood where the quadratic saddle model holds.
class model_region_error : public std::domain_error {
 public:
  explicit model_region_error(const std::string& what) : std::domain_error(what) {}
};

// Two routes that must agree (or an integrality gate) failed beyond tolerance.
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace etaflow

#endif

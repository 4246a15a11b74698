#pragma once

#include <stdexcept>
#include <string>

namespace qsym {

// Error categories. The numeric code doubles as the CLI exit status.
enum class ErrorKind : int {
  InvalidDimension = 10,
  Parameter = 11,
  Shape = 12,
  Structural = 13,
  Domain = 14,
  Resonance = 15,
  Truncation = 16,
  Comparison = 17,
  Solver = 18,
  Inconsistency = 19,
  Unsupported = 20,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

#define QSYM_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& msg) : Error(ErrorKind::Kind, msg) {} \
  };

QSYM_DEFINE_ERROR(InvalidDimensionError, InvalidDimension)
QSYM_DEFINE_ERROR(ParameterError, Parameter)
QSYM_DEFINE_ERROR(ShapeError, Shape)
QSYM_DEFINE_ERROR(StructuralError, Structural)
QSYM_DEFINE_ERROR(DomainError, Domain)
QSYM_DEFINE_ERROR(ComparisonError, Comparison)
QSYM_DEFINE_ERROR(SolverError, Solver)
QSYM_DEFINE_ERROR(InconsistencyError, Inconsistency)
QSYM_DEFINE_ERROR(UnsupportedError, Unsupported)

#undef QSYM_DEFINE_ERROR

class ResonanceError : public Error {
 public:
  ResonanceError(int k, double gap)
      : Error(ErrorKind::Resonance,
              "resonance at order k=" + std::to_string(k) +
                  " (min |k - eigenvalue difference| = " + std::to_string(gap) + ")"),
        k_(k) {}
  int order() const { return k_; }

 private:
  int k_;
};

class TruncationError : public Error {
 public:
  TruncationError(int max_order, double tail)
      : Error(ErrorKind::Truncation,
              "series not converged within max_order=" + std::to_string(max_order) +
                  " (tail estimate " + std::to_string(tail) + ")"),
        tail_(tail) {}
  double tail() const { return tail_; }

 private:
  double tail_;
};

}  // namespace qsym

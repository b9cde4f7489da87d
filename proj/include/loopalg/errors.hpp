#ifndef LOOPALG_ERRORS_HPP
#define LOOPALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loopalg {

// Base class for all analysis-level failures. The CLI maps these to exit
// code 2 and prints the error name, so keep names stable.
class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SyntaxError : public AnalysisError {
 public:
  SyntaxError(size_t line, size_t column, const std::string& message)
      : AnalysisError("SyntaxError", "line " + std::to_string(line) + ":" +
                                         std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

class UnknownVariable : public AnalysisError {
 public:
  explicit UnknownVariable(const std::string& name)
      : AnalysisError("UnknownVariable", "unknown variable '" + name + "'") {}
};

class NonAffineUpdate : public AnalysisError {
 public:
  explicit NonAffineUpdate(const std::string& assignment)
      : AnalysisError("NonAffineUpdate",
                      "assignment is not affine: " + assignment) {}
};

class NondetUnsupported : public AnalysisError {
 public:
  explicit NondetUnsupported(const std::string& assignment)
      : AnalysisError("NondetUnsupported",
                      "nondeterministic assignment not supported: " + assignment) {}
};

class EmptyInvariant : public AnalysisError {
 public:
  explicit EmptyInvariant(size_t line)
      : AnalysisError("EmptyInvariant", "line " + std::to_string(line) +
                                            ": invariant is the zero polynomial") {}
};

class MissingAssignment : public AnalysisError {
 public:
  explicit MissingAssignment(const std::string& var)
      : AnalysisError("MissingAssignment", "no value for variable '" + var + "'") {}
};

class SymbolicInitial : public AnalysisError {
 public:
  explicit SymbolicInitial(const std::string& detail)
      : AnalysisError("SymbolicInitial", detail) {}
};

class IrrationalEigenvalue : public AnalysisError {
 public:
  explicit IrrationalEigenvalue(const std::string& factor)
      : AnalysisError("IrrationalEigenvalue",
                      "characteristic polynomial has no rational root in factor " +
                          factor),
        factor_(factor) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

class ResourceLimit : public AnalysisError {
 public:
  explicit ResourceLimit(const std::string& detail)
      : AnalysisError("ResourceLimit", detail) {}
};

// Thrown when a constraint search completes without finding any model.
// The CLI maps this one to exit code 3.
class UnsatError : public AnalysisError {
 public:
  explicit UnsatError(const std::string& detail)
      : AnalysisError("Unsat", detail) {}
};

class NonRationalModel : public AnalysisError {
 public:
  explicit NonRationalModel(const std::string& unknown)
      : AnalysisError("NonRationalModel",
                      "solver assigned a non-rational value to '" + unknown + "'") {}
};

class SolverNotFound : public AnalysisError {
 public:
  explicit SolverNotFound(const std::string& command)
      : AnalysisError("SolverNotFound", "cannot run solver: " + command) {}
};

class SolverProtocolError : public AnalysisError {
 public:
  explicit SolverProtocolError(const std::string& detail)
      : AnalysisError("SolverProtocolError", detail) {}
};

class SolverTimeout : public AnalysisError {
 public:
  explicit SolverTimeout(const std::string& detail)
      : AnalysisError("Timeout", detail) {}
};

}  // namespace loopalg

#endif

#ifndef LOOPALG_VARIABLE_HPP
#define LOOPALG_VARIABLE_HPP

#include <compare>
#include <string>
#include <vector>

namespace loopalg {

// Role of a variable. Metadata only: the algebra treats all kinds uniformly.
enum class VarKind {
  Program,      // loop state variable
  Counter,      // the iteration counter n
  Exponential,  // u_j standing for lambda_j^n
  Template,     // synthesis unknown
  Parameter,    // symbolic initial value
  Auxiliary,    // tag/temporary variable
};

const char* var_kind_name(VarKind k);

class Var {
 public:
  Var() : kind_(VarKind::Auxiliary) {}
  Var(std::string name, VarKind kind) : name_(std::move(name)), kind_(kind) {}

  const std::string& name() const { return name_; }
  VarKind kind() const { return kind_; }

  // Identity is the name; the kind is fixed at creation.
  friend bool operator==(const Var& a, const Var& b) { return a.name_ == b.name_; }
  friend bool operator!=(const Var& a, const Var& b) { return a.name_ != b.name_; }
  friend bool operator<(const Var& a, const Var& b) { return a.name_ < b.name_; }

 private:
  std::string name_;
  VarKind kind_;
};

// First name from base, base_, base__, ... that is not taken.
template <typename Container>
std::string fresh_name(std::string base, const Container& taken) {
  auto used = [&](const std::string& s) {
    for (const auto& t : taken)
      if (t == s) return true;
    return false;
  };
  while (used(base)) base += "_";
  return base;
}

}  // namespace loopalg

#endif

#pragma once

#include <map>
#include <vector>

#include "jetlab/kernel.hpp"

namespace jetlab {

// Sparse polynomial in m complex variables; monomial exponents -> coefficient.
class Polynomial {
 public:
  explicit Polynomial(int vars) : vars_(vars) {}

  static Polynomial constant(int vars, Cx c);
  static Polynomial coordinate(int vars, int j);  // z_j

  int vars() const { return vars_; }
  void add_term(const std::vector<int>& expo, Cx coeff);

  Cx eval(const Point& p) const;
  Polynomial derivative(int var) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;

  const std::map<std::vector<int>, Cx>& terms() const { return terms_; }

 private:
  int vars_;
  std::map<std::vector<int>, Cx> terms_;
};

}  // namespace jetlab

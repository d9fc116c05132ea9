#include "jetlab/polynomial.hpp"

#include <stdexcept>

namespace jetlab {

Polynomial Polynomial::constant(int vars, Cx c) {
  Polynomial p(vars);
  p.add_term(std::vector<int>(vars, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int vars, int j) {
  Polynomial p(vars);
  std::vector<int> e(vars, 0);
  e.at(j) = 1;
  p.add_term(e, Cx(1.0, 0.0));
  return p;
}

void Polynomial::add_term(const std::vector<int>& expo, Cx coeff) {
  if (static_cast<int>(expo.size()) != vars_) {
    throw std::invalid_argument("Polynomial: exponent arity mismatch");
  }
  terms_[expo] += coeff;
}

Cx Polynomial::eval(const Point& p) const {
  if (p.dim() != vars_) throw std::invalid_argument("Polynomial::eval: arity mismatch");
  Cx out(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    Cx mono = c;
    for (int j = 0; j < vars_; ++j) {
      for (int i = 0; i < e[j]; ++i) mono *= p.coords[j];
    }
    out += mono;
  }
  return out;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> ne = e;
    ne[var] -= 1;
    out.add_term(ne, c * static_cast<double>(e[var]));
  }
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  Polynomial out(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(vars_);
      for (int j = 0; j < vars_; ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("Polynomial: arity mismatch");
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

}  // namespace jetlab

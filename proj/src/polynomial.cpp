#include "lorhol/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace lorhol {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  if (c != 0.0) p.terms_[std::vector<int>(nvars, 0)] = c;
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  p.terms_[e] = 1.0;
  return p;
}

bool Polynomial::is_zero(double tol) const {
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

void Polynomial::add_term(const std::vector<int>& exponents, double coeff) {
  if (static_cast<int>(exponents.size()) != nvars_) {
    throw std::invalid_argument("Polynomial::add_term: exponent arity mismatch");
  }
  terms_[exponents] += coeff;
  if (terms_[exponents] == 0.0) terms_.erase(exponents);
}

double Polynomial::eval(const Eigen::VectorXd& point) const {
  if (point.size() != nvars_) {
    throw std::invalid_argument("Polynomial::eval: point arity mismatch");
  }
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= point(i);
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    d[var] -= 1;
    out.terms_[d] += c * e[var];
  }
  return out;
}

int Polynomial::degree(int var) const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    if (c != 0.0) deg = std::max(deg, e[var]);
  }
  return deg;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [e, c] : other.terms_) {
    out.terms_[e] += c;
    if (out.terms_[e] == 0.0) out.terms_.erase(e);
  }
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) {
      std::vector<int> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      out.terms_[e] += c1 * c2;
    }
  }
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(nvars_);
  if (s == 0.0) return out;
  for (const auto& [e, c] : terms_) out.terms_[e] = c * s;
  return out;
}

Polynomial Polynomial::compose_single(const Polynomial& inner) const {
  if (nvars_ != 1) {
    throw std::invalid_argument("compose_single: outer polynomial must be univariate");
  }
  Polynomial out(inner.nvars());
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(inner.nvars(), c);
    for (int k = 0; k < e[0]; ++k) term = term * inner;
    out = out + term;
  }
  return out;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
  if (static_cast<int>(subs.size()) != nvars_) {
    throw std::invalid_argument("substitute: need one replacement per variable");
  }
  const int out_vars = subs.empty() ? 0 : subs.front().nvars();
  Polynomial out(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(out_vars, c);
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term = term * subs[i];
    }
    out = out + term;
  }
  return out;
}

}  // namespace lorhol

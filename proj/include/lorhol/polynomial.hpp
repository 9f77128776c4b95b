#pragma once

// Sparse multivariate polynomials with exact differentiation, used for metric
// coefficient functions and path coordinates.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lorhol {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero(double tol = 0.0) const;

  // Adds c * prod_i x_i^{exponents[i]}.
  void add_term(const std::vector<int>& exponents, double coeff);

  double eval(const Eigen::VectorXd& point) const;
  Polynomial derivative(int var) const;
  int degree(int var) const;  // max exponent of the given variable

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  // Substitutes x_var -> inner (a polynomial in possibly different variables
  // shared by all other substitutions); used for 1-variable compositions.
  Polynomial compose_single(const Polynomial& inner) const;

  // Full substitution x_i -> subs[i]; all subs share the same variable count,
  // which becomes the variable count of the result.
  Polynomial substitute(const std::vector<Polynomial>& subs) const;

  const std::map<std::vector<int>, double>& terms() const { return terms_; }

 private:
  int nvars_ = 1;
  std::map<std::vector<int>, double> terms_;
};

}  // namespace lorhol

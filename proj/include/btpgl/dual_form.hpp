#pragma once

#include "btpgl/lattice.hpp"

namespace btpgl {

/// A primitive linear form f = sum a_j x_j^* on an ambient lattice M, with
/// coefficients against the dual of M's basis. All coefficients lie in R and
/// at least one is a unit, so ker f is a hyperplane of P(M).
class DualForm {
 public:
  DualForm(LatticeBasis ambient, Vector coefficients);

  /// Divides by the p-power of minimal valuation so the result is primitive.
  static DualForm primitive(LatticeBasis ambient, Vector coefficients);

  const LatticeBasis& ambient() const { return ambient_; }
  const PAdicContext& ctx() const { return ambient_.ctx(); }
  const Vector& coefficients() const { return coefficients_; }

  DualForm times_unit(const Scalar& u) const;

 private:
  LatticeBasis ambient_;
  Vector coefficients_;
};

/// Equation of B(H) when f cuts out H: coefficients (B^T)^{-1} a.
/// Throws NotUnimodular unless B lies in GL(n, R).
DualForm transform_dual_form(const Matrix& b, const DualForm& f);

}  // namespace btpgl

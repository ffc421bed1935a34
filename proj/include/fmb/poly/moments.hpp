#pragma once

#include "fmb/la/matrix.hpp"
#include "fmb/poly/basis.hpp"
#include "fmb/poly/polynomial.hpp"

namespace fmb::poly {

// Truncated moment sequence y = (y_alpha), |alpha| <= order, graded-lex
// indexed. For a probability measure, values[0] (the constant index) is 1.
struct MomentVector {
  int n = 0;
  int order = 0;
  la::Vector values;
};

// Riesz functional L_y(p) = sum_alpha p_alpha y_alpha.
double riesz(const MomentVector& y, const Polynomial& p);

// Moment matrix of order t: entry (alpha, beta) = y_{alpha+beta}, size s(t).
la::Matrix moment_matrix(const MomentVector& y, int t);

// Localizing matrix of q: entry (alpha, beta) = L_y(x^alpha x^beta q).
la::Matrix localizing_matrix(const MomentVector& y, const Polynomial& q, int t);

// Moments of the Dirac measure at x: y_alpha = x^alpha.
MomentVector dirac_moments(const la::Vector& x, int order);

}  // namespace fmb::poly

#pragma once

namespace cecp {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// 1 - I_x(a, b), evaluated without cancellation.
double incomplete_beta_complement(double a, double b, double x);

/// P(F <= f) for the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);

/// P(F > f), accurate far into the upper tail.
double f_survival(double f, double d1, double d2);

/// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided(double t, double dof);

}  // namespace cecp

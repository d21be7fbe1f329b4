#pragma once

// Scalar head-flow relations of the link models and their derivatives.
// Sign convention: the returned value is h_from - h_to.

namespace wdnlip {

/// R q |q|^(mu-1); odd in q.
double headloss_pipe(double resistance, double mu, double q);

/// -s^2 h^s + r q^nu s^(2-nu). Throws NonPositiveFlow for q <= 0.
double headgain_pump(double shutoff_head, double coeff, double nu, double speed, double q);

/// o R q |q|^(mu-1).
double headloss_valve(double openness, double resistance, double mu, double q);

/// mu R |q|^(mu-1), nonnegative.
double dheadloss_pipe(double resistance, double mu, double q);

/// nu r q^(nu-1) s^(2-nu). Throws NonPositiveFlow for q <= 0.
double dheadgain_pump(double coeff, double nu, double speed, double q);

/// mu o R |q|^(mu-1).
double dheadloss_valve(double openness, double resistance, double mu, double q);

}  // namespace wdnlip

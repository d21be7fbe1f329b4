#include "wdnlip/hydraulics.hpp"

#include <cmath>
#include <string>

#include "wdnlip/errors.hpp"

namespace wdnlip {

namespace {

void require_positive_flow(double q) {
  if (!(q > 0.0)) throw Error(ErrorKind::NonPositiveFlow, "pump flow " + std::to_string(q));
}

}  // namespace

double headloss_pipe(double resistance, double mu, double q) {
  return resistance * q * std::pow(std::abs(q), mu - 1.0);
}

double headgain_pump(double shutoff_head, double coeff, double nu, double speed, double q) {
  require_positive_flow(q);
  return -speed * speed * shutoff_head + coeff * std::pow(q, nu) * std::pow(speed, 2.0 - nu);
}

double headloss_valve(double openness, double resistance, double mu, double q) {
  return openness * headloss_pipe(resistance, mu, q);
}

double dheadloss_pipe(double resistance, double mu, double q) {
  return mu * resistance * std::pow(std::abs(q), mu - 1.0);
}

double dheadgain_pump(double coeff, double nu, double speed, double q) {
  require_positive_flow(q);
  return nu * coeff * std::pow(q, nu - 1.0) * std::pow(speed, 2.0 - nu);
}

double dheadloss_valve(double openness, double resistance, double mu, double q) {
  return mu * openness * resistance * std::pow(std::abs(q), mu - 1.0);
}

}  // namespace wdnlip

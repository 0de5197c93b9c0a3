#include "fracdim2d/gamma.hpp"

#include <cmath>
#include <numbers>

#include "fracdim2d/error.hpp"

namespace fracdim2d::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x)) throw NumericError("gamma: non-finite argument");
  if (x == std::floor(x) && x <= 0.0) throw NumericError("gamma: pole at non-positive integer");
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) acc += kLanczosCoef[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t split in two halves to postpone overflow.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * acc;
}

double lower_incomplete_gamma(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0) || x > 40.0) {
    throw NumericError("lower_incomplete_gamma: need s > 0 and 0 <= x <= 40");
  }
  if (x == 0.0) return 0.0;
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= x / (s + k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(s * std::log(x) - x);
}

}  // namespace fracdim2d::special

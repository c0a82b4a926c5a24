#pragma once

#include <string>
#include <vector>

#include "splb/test_function.hpp"

namespace splb {

/// Parameters for the built-in targets; each id reads the fields it needs
/// and ignores the rest.
struct CorpusParams {
  double a = 0;
  double b = 1;
  double omega = 6.283185307179586;  // sin: u = sin(omega x + phase)
  double phase = 0;
  std::vector<double> coefficients;  // poly: monomial coefficients, constant term first
  double rate = 1.0;                 // exp: u = exp(rate x)
  double scale = 5.0;                // runge: u = 1 / (1 + (scale x)^2)
  double kink = 0.5;                 // piecewise_c1: C^1 junction point
};

/// Built-in targets: "sin", "poly", "exp", "runge", "piecewise_c1".
/// Exact seminorms are attached where available: closed-form for sin and
/// exp, piecewise-polynomial quadrature for poly and piecewise_c1; runge has
/// none.  piecewise_c1 has two square-integrable derivatives and rejects
/// higher orders.
TestFunction corpus(const std::string& id, const CorpusParams& params = {});

} // namespace splb

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scramble/series.hpp"

namespace scramble {

struct CollapseSpec {
  double z = 2.0;       // t -> t / L^z
  double alpha = 1.0;   // y -> y / L^alpha
  std::size_t grid = 64;
  // Portion of the common rescaled domain compared, as fractions of its extent.
  double window_lo = 0.0;
  double window_hi = 1.0;
};

// RMS deviation of the rescaled curves from their pointwise mean, divided by
// the range of the mean curve. Each series uses its own L.
double collapse_error(std::span<const Series> series, const CollapseSpec& spec);

struct FitWindow {
  enum class Axis { time, value };
  Axis axis = Axis::time;
  double lo = 0.0;
  double hi = 0.0;
};

// Defaults: exponential fits use 2 <= mean <= L/20, power laws 4 <= t <= L^2/100.
FitWindow exponential_window(std::size_t L);
FitWindow power_law_window(std::size_t L);

struct FitResult {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double window_lo = 0.0;  // in time
  double window_hi = 0.0;
  double r2 = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

// Slope of log(mean) against t.
FitResult fit_exponential_rate(const Series& s, const FitWindow& window);
// Slope of log(mean) against log(t).
FitResult fit_power_law(const Series& s, const FitWindow& window);
// Mean and standard error of the last tail_fraction of the points.
FitResult saturation_value(const Series& s, double tail_fraction);

// Ordinary least squares y = a + b x.
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

// Series with mean and err divided by L (times unchanged).
Series per_site(const Series& s);

}  // namespace scramble

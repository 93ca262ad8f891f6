#pragma once

#include <cmath>

namespace radpulse {

// Neumaier-compensated accumulator; the series sums here alternate in sign
// with terms that can dwarf the final value, so plain += loses digits.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  KahanAccumulator& operator+=(double value) {
    const double t = sum + value;
    if (std::fabs(sum) >= std::fabs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
    return *this;
  }

  double result() const { return sum + compensation; }
};

} // namespace radpulse

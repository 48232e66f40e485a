// Scalar reference kernels. Every vector variant is tested against these.
#include <cmath>

#include "hardylab/summation.hpp"
#include "kernels_impl.hpp"

namespace hardylab::kernels::detail::scalar {

double weighted_power_sum(const PowerSumArgs& args) {
  const bool use_x = args.ex != 0.0;
  const bool use_y = args.y != nullptr && args.ey != 0.0;
  CompensatedSum acc;
  for (std::size_t i = 0; i < args.n; ++i) {
    double term = args.w[i];
    if (use_x) term *= std::pow(args.x[i], args.ex);
    if (use_y) term *= std::pow(args.y[i], args.ey);
    acc += term;
  }
  return acc.value();
}

void exp_array(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(in[i]);
}

void log_array(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(in[i]);
}

}  // namespace hardylab::kernels::detail::scalar

#pragma once

#include <cstddef>

namespace hardylab::kernels::detail {

struct PowerSumArgs {
  const double* w;
  const double* x;
  const double* y;  // may be null
  std::size_t n;
  double ex;
  double ey;
};

namespace scalar {
double weighted_power_sum(const PowerSumArgs& args);
void exp_array(const double* in, double* out, std::size_t n);
void log_array(const double* in, double* out, std::size_t n);
}  // namespace scalar

#if defined(HARDYLAB_WITH_AVX2)
namespace avx2 {
double weighted_power_sum(const PowerSumArgs& args);
void exp_array(const double* in, double* out, std::size_t n);
void log_array(const double* in, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace hardylab::kernels::detail

// Data-parallel reductions behind every discrete sum and quadrature rule.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active backend is chosen once at runtime from the CPU
// features and can be overridden with HARDYLAB_KERNEL=scalar|avx2.
#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace hardylab::kernels {

enum class Backend { kScalar, kAvx2 };

bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
/// Throws std::invalid_argument when the backend is not available here.
void set_active_backend(Backend b);
std::string_view backend_name(Backend b) noexcept;
/// Parses "scalar", "avx2" or "auto"; throws std::invalid_argument.
Backend parse_backend(std::string_view name);
std::vector<Backend> available_backends();

/// sum_i w[i] * x[i]^ex * y[i]^ey with compensated accumulation.
/// All spans must have equal length; an empty y means y[i] = 1.
double weighted_power_sum(Backend b, std::span<const double> w, std::span<const double> x,
                          double ex, std::span<const double> y, double ey);

inline double weighted_power_sum(std::span<const double> w, std::span<const double> x,
                                 double ex, std::span<const double> y = {}, double ey = 0.0) {
  return weighted_power_sum(active_backend(), w, x, ex, y, ey);
}

// Elementwise transcendental kernels used inside the reductions; exposed so
// the vector variants can be checked against libm.
void exp_array(Backend b, std::span<const double> in, std::span<double> out);
void log_array(Backend b, std::span<const double> in, std::span<double> out);

}  // namespace hardylab::kernels

#include "hardylab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace hardylab::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(HARDYLAB_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend best_backend() noexcept { return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar; }

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("HARDYLAB_KERNEL")) {
    try {
      const Backend b = parse_backend(env);
      if (backend_available(b)) return b;
    } catch (const std::invalid_argument&) {
    }
  }
  return best_backend();
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(initial_backend())};
  return slot;
}

void require_same_size(std::size_t n, std::size_t m) {
  if (n != m) throw std::invalid_argument("kernel operands must have equal length");
}

}  // namespace

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::kScalar: return true;
    case Backend::kAvx2: return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() noexcept { return static_cast<Backend>(active_slot().load()); }

void set_active_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument(std::string("kernel backend not available: ") +
                                std::string(backend_name(b)));
  }
  active_slot().store(static_cast<int>(b));
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "auto") return best_backend();
  throw std::invalid_argument("unknown kernel backend: " + std::string(name));
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::kScalar};
  if (backend_available(Backend::kAvx2)) out.push_back(Backend::kAvx2);
  return out;
}

double weighted_power_sum(Backend b, std::span<const double> w, std::span<const double> x,
                          double ex, std::span<const double> y, double ey) {
  require_same_size(w.size(), x.size());
  if (!y.empty()) require_same_size(w.size(), y.size());
  const detail::PowerSumArgs args{w.data(), x.data(), y.empty() ? nullptr : y.data(),
                                  w.size(), ex, ey};
#if defined(HARDYLAB_WITH_AVX2)
  if (b == Backend::kAvx2 && backend_available(b)) return detail::avx2::weighted_power_sum(args);
#endif
  (void)b;
  return detail::scalar::weighted_power_sum(args);
}

void exp_array(Backend b, std::span<const double> in, std::span<double> out) {
  require_same_size(in.size(), out.size());
#if defined(HARDYLAB_WITH_AVX2)
  if (b == Backend::kAvx2 && backend_available(b)) {
    return detail::avx2::exp_array(in.data(), out.data(), in.size());
  }
#endif
  (void)b;
  detail::scalar::exp_array(in.data(), out.data(), in.size());
}

void log_array(Backend b, std::span<const double> in, std::span<double> out) {
  require_same_size(in.size(), out.size());
#if defined(HARDYLAB_WITH_AVX2)
  if (b == Backend::kAvx2 && backend_available(b)) {
    return detail::avx2::log_array(in.data(), out.data(), in.size());
  }
#endif
  (void)b;
  detail::scalar::log_array(in.data(), out.data(), in.size());
}

}  // namespace hardylab::kernels

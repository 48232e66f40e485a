// AVX2 variants of the power-sum kernels.
//
// x^e is evaluated as exp(e log x) with Cephes-style rational approximations
// for log and exp (about 1 ulp each). Lanes whose inputs leave the range
// where those approximations are valid (non-positive, subnormal or
// non-finite bases, exp arguments outside [-708, 709]) are recomputed with
// the scalar formula.
#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstdint>

#include "hardylab/summation.hpp"
#include "kernels_impl.hpp"

namespace hardylab::kernels::detail::avx2 {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d polevl(__m256d x, const double* c, int degree) {
  __m256d acc = splat(c[0]);
  for (int i = 1; i <= degree; ++i) acc = _mm256_add_pd(_mm256_mul_pd(acc, x), splat(c[i]));
  return acc;
}

// Monic polynomial: x^degree + c[0] x^(degree-1) + ... + c[degree-1].
inline __m256d p1evl(__m256d x, const double* c, int degree) {
  __m256d acc = _mm256_add_pd(x, splat(c[0]));
  for (int i = 1; i < degree; ++i) acc = _mm256_add_pd(_mm256_mul_pd(acc, x), splat(c[i]));
  return acc;
}

constexpr double kLogP[] = {1.01875663804580931796E-4, 4.97494994976747001425E-1,
                            4.70579119878881725854E0,  1.44989225341610930846E1,
                            1.79368678507819816313E1,  7.70838733755885391666E0};
constexpr double kLogQ[] = {1.12873587189167450590E1, 4.52279145837532221105E1,
                            8.29875266912776603211E1, 7.11544750618563894466E1,
                            2.31251620126765340583E1};

constexpr double kExpP[] = {1.26177193074810590878E-4, 3.02994407707441961300E-2,
                            9.99999999999999999910E-1};
constexpr double kExpQ[] = {3.00198505138664455042E-6, 2.52448340349684104739E-3,
                            2.27265548208155028766E-1, 2.00000000000000000009E0};

constexpr double kExpLo = -708.0;
constexpr double kExpHi = 709.0;

// Valid for positive, normal, finite x.
inline __m256d vlog(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  const __m256i mant_bits =
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
                      _mm256_set1_epi64x(0x3fe0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);  // [0.5, 1)
  // Small nonnegative integers convert exactly through the 2^52 trick.
  const __m256d two52 = splat(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, splat(1022.0));

  const __m256d below = _mm256_cmp_pd(m, splat(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, splat(1.0)));
  m = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(below, m)), splat(1.0));

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d y = _mm256_div_pd(_mm256_mul_pd(z, polevl(m, kLogP, 5)), p1evl(m, kLogQ, 5));
  y = _mm256_mul_pd(m, y);
  y = _mm256_sub_pd(y, _mm256_mul_pd(e, splat(2.121944400546905827679e-4)));
  y = _mm256_sub_pd(y, _mm256_mul_pd(splat(0.5), z));
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_add_pd(r, _mm256_mul_pd(e, splat(0.693359375)));
}

// Valid for arguments in [kExpLo, kExpHi].
inline __m256d vexp(__m256d x) {
  const __m256d n = _mm256_floor_pd(
      _mm256_add_pd(_mm256_mul_pd(x, splat(1.4426950408889634073599)), splat(0.5)));
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, splat(6.93145751953125E-1)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(n, splat(1.42860682030941723212E-6)));
  const __m256d rr = _mm256_mul_pd(r, r);
  const __m256d px = _mm256_mul_pd(r, polevl(rr, kExpP, 2));
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(polevl(rr, kExpQ, 3), px));
  e = _mm256_add_pd(splat(1.0), _mm256_add_pd(e, e));

  // 2^n: n is integral and |n| < 2^51, so adding 1.5 * 2^52 leaves it in the
  // low mantissa bits.
  const __m256d magic = splat(6755399441055744.0);
  const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                      _mm256_castpd_si256(magic));
  const __m256i scale_bits =
      _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(scale_bits));
}

// Lanes where log is outside its fast path: NaN, <= 0, subnormal, inf.
inline __m256d log_bad(__m256d x) {
  const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, splat(DBL_MIN), _CMP_GE_OQ),
                                   _mm256_cmp_pd(x, splat(DBL_MAX), _CMP_LE_OQ));
  return _mm256_xor_pd(ok, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
}

inline __m256d exp_bad(__m256d x) {
  const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(x, splat(kExpLo), _CMP_GE_OQ),
                                   _mm256_cmp_pd(x, splat(kExpHi), _CMP_LE_OQ));
  return _mm256_xor_pd(ok, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));
}

inline __m256i tail_mask(std::size_t remaining) {
  alignas(32) std::int64_t m[4];
  for (std::size_t k = 0; k < 4; ++k) m[k] = k < remaining ? -1 : 0;
  return _mm256_load_si256(reinterpret_cast<const __m256i*>(m));
}

inline __m256d load(const double* p, std::size_t remaining, double pad) {
  if (remaining >= 4) return _mm256_loadu_pd(p);
  const __m256i mask = tail_mask(remaining);
  const __m256d v = _mm256_maskload_pd(p, mask);
  return _mm256_blendv_pd(splat(pad), v, _mm256_castsi256_pd(mask));
}

double scalar_term(const PowerSumArgs& a, std::size_t i, bool use_x, bool use_y) {
  double t = a.w[i];
  if (use_x) t *= std::pow(a.x[i], a.ex);
  if (use_y) t *= std::pow(a.y[i], a.ey);
  return t;
}

}  // namespace

double weighted_power_sum(const PowerSumArgs& args) {
  const bool use_x = args.ex != 0.0;
  const bool use_y = args.y != nullptr && args.ey != 0.0;
  const __m256d one = splat(1.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  for (std::size_t i = 0; i < args.n; i += 4) {
    const std::size_t remaining = args.n - i;
    const __m256d w = load(args.w + i, remaining, 0.0);
    __m256d arg = _mm256_setzero_pd();
    __m256d bad = _mm256_setzero_pd();
    if (use_x) {
      const __m256d x = load(args.x + i, remaining, 1.0);
      const __m256d b = log_bad(x);
      bad = _mm256_or_pd(bad, b);
      arg = _mm256_mul_pd(splat(args.ex), vlog(_mm256_blendv_pd(x, one, b)));
    }
    if (use_y) {
      const __m256d y = load(args.y + i, remaining, 1.0);
      const __m256d b = log_bad(y);
      bad = _mm256_or_pd(bad, b);
      arg = _mm256_add_pd(arg, _mm256_mul_pd(splat(args.ey), vlog(_mm256_blendv_pd(y, one, b))));
    }
    const __m256d eb = exp_bad(arg);
    bad = _mm256_or_pd(bad, eb);
    __m256d term = _mm256_mul_pd(w, vexp(_mm256_blendv_pd(arg, _mm256_setzero_pd(), eb)));

    int bad_lanes = _mm256_movemask_pd(bad);
    if (remaining < 4) bad_lanes &= (1 << remaining) - 1;
    if (bad_lanes != 0) {
      alignas(32) double t[4];
      _mm256_store_pd(t, term);
      for (std::size_t k = 0; k < 4 && k < remaining; ++k) {
        if (bad_lanes & (1 << k)) t[k] = scalar_term(args, i + k, use_x, use_y);
      }
      term = _mm256_load_pd(t);
    }

    // Lane-wise TwoSum.
    const __m256d s = _mm256_add_pd(acc, term);
    const __m256d bb = _mm256_sub_pd(s, acc);
    const __m256d err =
        _mm256_add_pd(_mm256_sub_pd(acc, _mm256_sub_pd(s, bb)), _mm256_sub_pd(term, bb));
    comp = _mm256_add_pd(comp, err);
    acc = s;
  }

  alignas(32) double a[4];
  alignas(32) double c[4];
  _mm256_store_pd(a, acc);
  _mm256_store_pd(c, comp);
  CompensatedSum total;
  for (int k = 0; k < 4; ++k) total += a[k];
  // An infinite lane leaves NaN in its error term.
  if (!std::isfinite(total.value())) return total.value();
  for (int k = 0; k < 4; ++k) total += c[k];
  return total.value();
}

void exp_array(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; i += 4) {
    const std::size_t remaining = n - i;
    const __m256d x = load(in + i, remaining, 0.0);
    const __m256d b = exp_bad(x);
    alignas(32) double t[4];
    _mm256_store_pd(t, vexp(_mm256_blendv_pd(x, _mm256_setzero_pd(), b)));
    const int bad = _mm256_movemask_pd(b);
    for (std::size_t k = 0; k < 4 && k < remaining; ++k) {
      out[i + k] = (bad & (1 << k)) ? std::exp(in[i + k]) : t[k];
    }
  }
}

void log_array(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; i += 4) {
    const std::size_t remaining = n - i;
    const __m256d x = load(in + i, remaining, 1.0);
    const __m256d b = log_bad(x);
    alignas(32) double t[4];
    _mm256_store_pd(t, vlog(_mm256_blendv_pd(x, splat(1.0), b)));
    const int bad = _mm256_movemask_pd(b);
    for (std::size_t k = 0; k < 4 && k < remaining; ++k) {
      out[i + k] = (bad & (1 << k)) ? std::log(in[i + k]) : t[k];
    }
  }
}

}  // namespace hardylab::kernels::detail::avx2

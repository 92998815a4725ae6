#include "airimpact/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace airimpact::kernels {
namespace {

double hadd(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hadd(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double r = hadd(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

void scale_clamp0_avx2(double* dst, const double* src, double m, std::size_t n) {
    const __m256d vm = _mm256_set1_pd(m);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(src + i), vm);
        // max(v, 0) returns the second operand on NaN, matching the scalar
        // "v > 0 ? v : 0" form.
        _mm256_storeu_pd(dst + i, _mm256_max_pd(v, zero));
    }
    for (; i < n; ++i) {
        double v = src[i] * m;
        dst[i] = v > 0.0 ? v : 0.0;
    }
}

QuadFitSums quad_fit_sums_avx2(const double* t, const double* y, std::size_t n) {
    __m256d st = _mm256_setzero_pd(), st2 = st, st3 = st, st4 = st;
    __m256d sy = st, sty = st, st2y = st;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vt = _mm256_loadu_pd(t + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vt2 = _mm256_mul_pd(vt, vt);
        st = _mm256_add_pd(st, vt);
        st2 = _mm256_add_pd(st2, vt2);
        st3 = _mm256_add_pd(st3, _mm256_mul_pd(vt2, vt));
        st4 = _mm256_add_pd(st4, _mm256_mul_pd(vt2, vt2));
        sy = _mm256_add_pd(sy, vy);
        sty = _mm256_add_pd(sty, _mm256_mul_pd(vt, vy));
        st2y = _mm256_add_pd(st2y, _mm256_mul_pd(vt2, vy));
    }
    QuadFitSums s;
    s.st = hadd(st);
    s.st2 = hadd(st2);
    s.st3 = hadd(st3);
    s.st4 = hadd(st4);
    s.sy = hadd(sy);
    s.sty = hadd(sty);
    s.st2y = hadd(st2y);
    for (; i < n; ++i) {
        double ti = t[i];
        double t2 = ti * ti;
        s.st += ti;
        s.st2 += t2;
        s.st3 += t2 * ti;
        s.st4 += t2 * t2;
        s.sy += y[i];
        s.sty += ti * y[i];
        s.st2y += t2 * y[i];
    }
    s.n = static_cast<double>(n);
    return s;
}

std::uint32_t max_u32_avx2(const std::uint32_t* x, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        acc = _mm256_max_epu32(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i)));
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint32_t m = 0;
    for (std::uint32_t lane : lanes)
        if (lane > m) m = lane;
    for (; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

}  // namespace

const Kernels* avx2_kernels() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Kernels k{"avx2",         sum_avx2,           dot_avx2,
                           scale_clamp0_avx2, quad_fit_sums_avx2, max_u32_avx2};
    return &k;
}

}  // namespace airimpact::kernels

#else

namespace airimpact::kernels {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace airimpact::kernels

#endif

#include "airimpact/kernels.hpp"

namespace airimpact::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void scale_clamp0_scalar(double* dst, const double* src, double m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = src[i] * m;
        dst[i] = v > 0.0 ? v : 0.0;
    }
}

QuadFitSums quad_fit_sums_scalar(const double* t, const double* y, std::size_t n) {
    QuadFitSums s;
    for (std::size_t i = 0; i < n; ++i) {
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

std::uint32_t max_u32_scalar(const std::uint32_t* x, std::size_t n) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar",        sum_scalar,           dot_scalar,
                           scale_clamp0_scalar, quad_fit_sums_scalar, max_u32_scalar};
    return k;
}

}  // namespace airimpact::kernels

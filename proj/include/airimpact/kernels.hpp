#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace airimpact::kernels {

// Power/cross sums for an ordinary least-squares fit of y on (1, t, t^2).
struct QuadFitSums {
    double n = 0;
    double st = 0, st2 = 0, st3 = 0, st4 = 0;
    double sy = 0, sty = 0, st2y = 0;
};

// One table of arithmetic inner loops. The scalar table is the reference
// semantics; vector variants must agree with it exactly on integer-valued
// data and to rounding on general doubles (association order differs).
struct Kernels {
    const char* name;

    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // dst[i] = max(src[i] * m, 0); NaN products map to 0.
    void (*scale_clamp0)(double* dst, const double* src, double m, std::size_t n);
    QuadFitSums (*quad_fit_sums)(const double* t, const double* y, std::size_t n);
    std::uint32_t (*max_u32)(const std::uint32_t* x, std::size_t n);
};

const Kernels& scalar_kernels();

// AVX2+FMA table, or nullptr when unsupported by this CPU or build.
const Kernels* avx2_kernels();

// Process-wide selection. Honors the AIRIMPACT_KERNELS environment variable
// ("auto", "scalar", "avx2") on first use; select() overrides it.
const Kernels& active();
void select(std::string_view name);

}  // namespace airimpact::kernels

#include "airimpact/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "airimpact/common.hpp"

namespace airimpact::kernels {
namespace {

const Kernels* resolve(std::string_view name) {
    if (name == "scalar") return &scalar_kernels();
    if (name == "avx2") {
        const Kernels* k = avx2_kernels();
        if (!k) throw ValidationError("avx2 kernels requested but not supported on this CPU");
        return k;
    }
    if (name == "auto" || name.empty()) {
        const Kernels* k = avx2_kernels();
        return k ? k : &scalar_kernels();
    }
    throw ValidationError("unknown kernel set '" + std::string(name) + "' (auto, scalar, avx2)");
}

std::atomic<const Kernels*> g_active{nullptr};

}  // namespace

const Kernels& active() {
    const Kernels* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        const char* env = std::getenv("AIRIMPACT_KERNELS");
        k = resolve(env ? env : "auto");
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void select(std::string_view name) {
    g_active.store(resolve(name), std::memory_order_release);
}

}  // namespace airimpact::kernels

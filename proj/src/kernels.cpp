#include "sboxeq/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace sboxeq::kernels {

#if defined(SBOXEQ_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

const KernelTable* avx2_kernels() {
#if defined(SBOXEQ_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2::table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("SBOXEQ_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
        const KernelTable* fast = avx2_kernels();
        return fast != nullptr ? fast : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace sboxeq::kernels

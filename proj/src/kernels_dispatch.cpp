#include "dopoq/kernels.hpp"

#include <cstdlib>
#include <string>

#include "dopoq/errors.hpp"

namespace dopoq::kernels {

bool avx2_available() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend& select_backend(std::string_view preference) {
    std::string pref(preference);
    if (const char* env = std::getenv("DOPOQ_KERNEL"); env && *env)
        pref = env;
    if (pref == "scalar") return scalar_backend();
    if (pref == "avx2") {
        if (!avx2_available())
            throw InvalidParameter("kernel backend 'avx2' not supported on this CPU");
        return avx2_backend();
    }
    if (pref == "auto" || pref.empty())
        return avx2_available() ? avx2_backend() : scalar_backend();
    throw InvalidParameter("unknown kernel backend '" + pref +
                           "' (expected auto, scalar, or avx2)");
}

} // namespace dopoq::kernels

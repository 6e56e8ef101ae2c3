#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hjwave/error.hpp"
#include "hjwave/kernels.hpp"

namespace hjwave::kernels {
namespace {

bool cpu_supports(Backend b)
{
    switch (b) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend detect()
{
    if (const char* forced = std::getenv("HJWAVE_KERNELS")) {
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
            if (std::strcmp(forced, to_string(b)) == 0 && cpu_supports(b)) return b;
    }
    if (cpu_supports(Backend::avx2)) return Backend::avx2;
    if (cpu_supports(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

std::atomic<const KernelTable*> current{nullptr};
std::atomic<Backend> current_backend{Backend::scalar};

} // namespace

const char* to_string(Backend b)
{
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "unknown";
}

bool available(Backend b) { return cpu_supports(b); }

const KernelTable& table(Backend b)
{
    if (!available(b)) throw DomainError(std::string("kernel backend not available: ") + to_string(b));
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::avx2_table;
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::neon_table;
#endif
    default: return detail::scalar_table;
    }
}

void set_active_backend(Backend b)
{
    const KernelTable& t = table(b);
    current_backend.store(b);
    current.store(&t);
}

const KernelTable& active()
{
    const KernelTable* t = current.load(std::memory_order_acquire);
    if (t == nullptr) {
        set_active_backend(detect());
        t = current.load(std::memory_order_acquire);
    }
    return *t;
}

Backend active_backend()
{
    active();
    return current_backend.load();
}

} // namespace hjwave::kernels

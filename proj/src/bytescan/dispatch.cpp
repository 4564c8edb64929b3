#include <atomic>

#include "bintriage/bytescan/kernels.hpp"

namespace bintriage::bytescan {

namespace {
std::atomic<bool> g_force_scalar{false};
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const Kernels& active() {
    if (g_force_scalar.load(std::memory_order_relaxed)) return scalar();
    if (const Kernels* k = avx2()) return *k;
    return scalar();
}

}  // namespace bintriage::bytescan

#include "bintriage/crypto/entropy.hpp"

#include <cmath>

#include "bintriage/bytescan/kernels.hpp"
#include "bintriage/error.hpp"

namespace bintriage::crypto {

double shannon_entropy(ByteView data) {
    if (data.empty()) throw TriageError("EMPTY_INPUT", "shannon_entropy: empty input");

    std::uint64_t counts[256];
    bytescan::active().histogram(data, counts);

    const double n = static_cast<double>(data.size());
    double bits = 0.0;
    for (int v = 0; v < 256; ++v) {
        if (counts[v] == 0) continue;
        const double p = static_cast<double>(counts[v]) / n;
        bits -= p * std::log2(p);
    }
    if (bits < 0.0) bits = 0.0;
    if (bits > 8.0) bits = 8.0;
    return bits;
}

}  // namespace bintriage::crypto

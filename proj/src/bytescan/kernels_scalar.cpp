#include "bintriage/bytescan/kernels.hpp"

#include <cstring>

namespace bintriage::bytescan {

namespace {

bool equals_at(ByteView hay, std::size_t pos, ByteView needle, bool ci) {
    if (!ci) return std::memcmp(hay.data() + pos, needle.data(), needle.size()) == 0;
    for (std::size_t i = 0; i < needle.size(); ++i) {
        if (ascii_lower(hay[pos + i]) != ascii_lower(needle[i])) return false;
    }
    return true;
}

void find_pattern_scalar(ByteView hay, ByteView needle, bool ci,
                         std::vector<std::size_t>& out) {
    if (needle.empty() || hay.size() < needle.size()) return;
    const std::size_t last = hay.size() - needle.size();
    const std::uint8_t f = ci ? ascii_lower(needle[0]) : needle[0];
    for (std::size_t i = 0; i <= last; ++i) {
        const std::uint8_t c = ci ? ascii_lower(hay[i]) : hay[i];
        if (c == f && equals_at(hay, i, needle, ci)) out.push_back(i);
    }
}

void ascii_runs_scalar(ByteView data, std::size_t min_len, std::vector<Run>& out) {
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        if (!is_printable_ascii(data[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < n && is_printable_ascii(data[i])) ++i;
        if (i - start >= min_len) out.push_back({start, i - start});
    }
}

void utf16le_runs_scalar(ByteView data, std::size_t min_len, std::vector<Run>& out) {
    const std::size_t n = data.size();
    std::size_t i = 0;
    while (i + 1 < n) {
        if (!(is_printable_ascii(data[i]) && data[i + 1] == 0)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        std::size_t units = 0;
        while (i + 1 < n && is_printable_ascii(data[i]) && data[i + 1] == 0) {
            i += 2;
            ++units;
        }
        if (units >= min_len) out.push_back({start, units});
    }
}

void histogram_scalar(ByteView data, std::uint64_t counts[256]) {
    std::memset(counts, 0, 256 * sizeof(std::uint64_t));
    // Four lanes break the store-to-load dependency on hot buffers.
    std::uint64_t h0[256] = {}, h1[256] = {}, h2[256] = {}, h3[256] = {};
    std::size_t i = 0;
    const std::size_t n4 = data.size() & ~std::size_t{3};
    for (; i < n4; i += 4) {
        ++h0[data[i]];
        ++h1[data[i + 1]];
        ++h2[data[i + 2]];
        ++h3[data[i + 3]];
    }
    for (; i < data.size(); ++i) ++h0[data[i]];
    for (int v = 0; v < 256; ++v) counts[v] = h0[v] + h1[v] + h2[v] + h3[v];
}

}  // namespace

const Kernels& scalar() {
    static const Kernels k{"scalar", &find_pattern_scalar, &ascii_runs_scalar,
                           &utf16le_runs_scalar, &histogram_scalar};
    return k;
}

}  // namespace bintriage::bytescan

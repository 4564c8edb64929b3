#include "bintriage/bytescan/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>
#include <cstring>

namespace bintriage::bytescan {

namespace {

inline __m256i fold_lower(__m256i v) {
    const __m256i a = _mm256_set1_epi8('A' - 1);
    const __m256i z = _mm256_set1_epi8('Z' + 1);
    __m256i is_upper = _mm256_and_si256(_mm256_cmpgt_epi8(v, a), _mm256_cmpgt_epi8(z, v));
    return _mm256_add_epi8(v, _mm256_and_si256(is_upper, _mm256_set1_epi8(0x20)));
}

bool equals_at(ByteView hay, std::size_t pos, ByteView needle, bool ci) {
    if (!ci) return std::memcmp(hay.data() + pos, needle.data(), needle.size()) == 0;
    for (std::size_t i = 0; i < needle.size(); ++i) {
        if (ascii_lower(hay[pos + i]) != ascii_lower(needle[i])) return false;
    }
    return true;
}

void find_pattern_avx2(ByteView hay, ByteView needle, bool ci,
                       std::vector<std::size_t>& out) {
    if (needle.empty() || hay.size() < needle.size()) return;
    const std::size_t last = hay.size() - needle.size();

    const std::uint8_t f8 = ci ? ascii_lower(needle[0]) : needle[0];
    const std::uint8_t l8 = ci ? ascii_lower(needle.back()) : needle.back();
    const __m256i first = _mm256_set1_epi8(static_cast<char>(f8));
    const __m256i lastb = _mm256_set1_epi8(static_cast<char>(l8));
    const std::size_t tail_off = needle.size() - 1;

    std::size_t i = 0;
    for (; i + 32 <= last + 1; i += 32) {
        __m256i block_first = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hay.data() + i));
        __m256i block_last =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hay.data() + i + tail_off));
        if (ci) {
            block_first = fold_lower(block_first);
            block_last = fold_lower(block_last);
        }
        __m256i eq = _mm256_and_si256(_mm256_cmpeq_epi8(block_first, first),
                                      _mm256_cmpeq_epi8(block_last, lastb));
        std::uint32_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(eq));
        while (mask != 0) {
            const int bit = std::countr_zero(mask);
            mask &= mask - 1;
            const std::size_t pos = i + static_cast<std::size_t>(bit);
            if (equals_at(hay, pos, needle, ci)) out.push_back(pos);
        }
    }
    for (; i <= last; ++i) {
        if (equals_at(hay, i, needle, ci)) out.push_back(i);
    }
}

struct RunState {
    bool open = false;
    std::size_t start = 0;
    std::size_t len = 0;
};

inline void close_run(RunState& s, std::size_t min_len, std::vector<Run>& out) {
    if (s.open && s.len >= min_len) out.push_back({s.start, s.len});
    s.open = false;
    s.len = 0;
}

void ascii_runs_avx2(ByteView data, std::size_t min_len, std::vector<Run>& out) {
    const std::size_t n = data.size();
    RunState s;
    std::size_t base = 0;
    const __m256i lo = _mm256_set1_epi8(0x1f);
    const __m256i hi = _mm256_set1_epi8(0x7f);
    for (; base + 32 <= n; base += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data.data() + base));
        // Signed compares: bytes >= 0x80 fail the lower bound on their own.
        __m256i printable = _mm256_and_si256(_mm256_cmpgt_epi8(v, lo), _mm256_cmpgt_epi8(hi, v));
        std::uint32_t m = static_cast<std::uint32_t>(_mm256_movemask_epi8(printable));
        if (m == 0xffffffffu) {
            if (!s.open) {
                s.open = true;
                s.start = base;
            }
            s.len += 32;
            continue;
        }
        if (m == 0) {
            close_run(s, min_len, out);
            continue;
        }
        std::size_t pos = 0;
        std::uint32_t rem = m;
        while (pos < 32) {
            if (rem & 1u) {
                const unsigned ones = static_cast<unsigned>(std::countr_zero(~rem));
                if (!s.open) {
                    s.open = true;
                    s.start = base + pos;
                }
                s.len += ones;
                pos += ones;
                rem = ones >= 32 ? 0 : rem >> ones;
            } else {
                const unsigned zeros = static_cast<unsigned>(std::countr_zero(rem));
                close_run(s, min_len, out);
                pos += zeros;
                rem = zeros >= 32 ? 0 : rem >> zeros;
            }
        }
    }
    for (; base < n; ++base) {
        if (is_printable_ascii(data[base])) {
            if (!s.open) {
                s.open = true;
                s.start = base;
            }
            ++s.len;
        } else {
            close_run(s, min_len, out);
        }
    }
    close_run(s, min_len, out);
}

}  // namespace

const Kernels* avx2() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels k{"avx2", &find_pattern_avx2, &ascii_runs_avx2,
                           scalar().utf16le_runs, scalar().histogram};
    return &k;
}

}  // namespace bintriage::bytescan

#else

namespace bintriage::bytescan {
const Kernels* avx2() { return nullptr; }
}  // namespace bintriage::bytescan

#endif

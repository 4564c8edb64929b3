#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bintriage/bytes.hpp"

// Byte-scanning inner loops shared by the string extractor, the signature
// engine, and the crypto-constant search. Each kernel has a scalar reference
// implementation and, on x86-64 with AVX2, a vector variant selected at
// runtime. The two are equivalence-tested on random and adversarial buffers;
// histogram and UTF-16 run extraction are not data-parallel wins and stay
// scalar in every table.

namespace bintriage::bytescan {

struct Run {
    std::size_t offset;  // byte offset of the first unit
    std::size_t length;  // ASCII: bytes; UTF-16LE: code units
};

struct Kernels {
    const char* name;

    // All (possibly overlapping) occurrences of needle, ascending offsets.
    // Case folding is ASCII-only.
    void (*find_pattern)(ByteView hay, ByteView needle, bool case_insensitive,
                         std::vector<std::size_t>& out);

    // Maximal runs of printable ASCII (0x20..0x7E) of length >= min_len.
    void (*ascii_runs)(ByteView data, std::size_t min_len, std::vector<Run>& out);

    // Maximal runs of printable-ASCII UTF-16LE code units of length >= min_len.
    void (*utf16le_runs)(ByteView data, std::size_t min_len, std::vector<Run>& out);

    void (*histogram)(ByteView data, std::uint64_t counts[256]);
};

// Reference implementation, always available.
const Kernels& scalar();

// AVX2 variant, or nullptr when the CPU (or build) lacks it.
const Kernels* avx2();

// Best available table. force_scalar(true) pins it to the reference kernels
// (used by the equivalence and determinism suites).
const Kernels& active();
void force_scalar(bool on);

}  // namespace bintriage::bytescan

#pragma once

#include <string_view>
#include <vector>

#include "bintriage/bytes.hpp"

namespace bintriage::crypto {

enum class Primitive { AesSbox, AesTtable, Sha1Iv, DesTables, Pbkdf2Marker };

std::string_view primitive_name(Primitive p);
bool primitive_from_name(std::string_view name, Primitive& out);

// The published table bytes each primitive is recognized by. SHA1_IV has two
// recognizers (word-little-endian and byte-big-endian); the others one each.
struct ConstantPattern {
    Primitive primitive;
    ByteView bytes;
    bool case_insensitive;  // only the PBKDF2 ASCII marker
};

std::vector<ConstantPattern> constant_patterns();

// Canonical plantable byte sequence for a primitive (first recognizer).
ByteView primitive_bytes(Primitive p);

}  // namespace bintriage::crypto

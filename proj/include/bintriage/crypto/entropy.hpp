#pragma once

#include "bintriage/bytes.hpp"

namespace bintriage::crypto {

// Shannon entropy in bits per byte, in [0, 8]. Throws EMPTY_INPUT on empty data.
double shannon_entropy(ByteView data);

}  // namespace bintriage::crypto

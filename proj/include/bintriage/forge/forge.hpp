#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "bintriage/bytes.hpp"

namespace bintriage::forge {

// Deterministic generator of minimal, loadable ELF/PE images with planted
// analysis targets. Output is a pair: the image bytes and a manifest that
// enumerates every planted artifact (sections, strings, imports, functions,
// crypto constants, keys, payloads) plus the author-declared expected
// findings, so tests can assert against the manifest instead of the
// implementation under test.
//
// Spec JSON shape (all plants optional):
//   {
//     "format": "ELF" | "PE",
//     "seed": 1,
//     "entry": "main",
//     "sections": [ {"name": ".rodata", "flags": "r", "size": 4096,
//                    "fill": "zero" | "random" |
//                            {"kind": "words", "count": 10000,
//                             "include": ["youcam"], "avoid": ["vbox"]} |
//                            {"kind": "text", "text": "..."}} ],
//     "functions": [ {"name": "main", "export": true} ],
//     "plants": [
//       {"plant": "string", "value": "...", "section": ".rodata",
//        "offset": 64, "encoding": "ascii" | "utf16le", "ref_from": "main"},
//       {"plant": "import", "symbol": "...", "library": "...",
//        "call_from": "main"},
//       {"plant": "dependency", "library": "libb.so"},
//       {"plant": "call", "from": "main", "to": "helper"},
//       {"plant": "branch", "at": "main", "skip": 1},
//       {"plant": "cmp_imm", "at": "main", "value": 100},
//       {"plant": "code_bytes", "at": "main", "hex": "0f0b"},
//       {"plant": "data_bytes", "section": ".data", "offset": 0, "hex": ".."},
//       {"plant": "constant", "primitive": "AES_SBOX", "section": ".rodata",
//        "offset": 512, "ref_from": "crypt"},
//       {"plant": "key_near_ref", "key_hex": "..", "iv_hex": "..",
//        "ref_function": "crypt", "section": ".data", "offset": 0,
//        "distance": 64},
//       {"plant": "encrypted_payload", "suite": "AES_256_CBC",
//        "key_hex": "..", "iv_hex": "..", "section": ".enc",
//        "plaintext": {"kind": "elf_like", "size": 65536,
//                      "strings": ["ManyCam"]}}
//     ],
//     "expect": { ... copied into the manifest verbatim ... }
//   }
struct ForgeOutput {
    Bytes image;
    nlohmann::json manifest;
};

ForgeOutput forge(const nlohmann::json& spec);
ForgeOutput forge_file(const std::string& spec_path);

// The decrypted-memory twin of a spec: every mapped section becomes a region,
// with encrypted payload sections replaced by their plaintext. Pairs with the
// static image to exercise the packed-content delta.
struct SnapshotOutput {
    Bytes dump;
    nlohmann::json region_map;
    nlohmann::json manifest;
};

SnapshotOutput forge_snapshot(const nlohmann::json& spec);

}  // namespace bintriage::forge

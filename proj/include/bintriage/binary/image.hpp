#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bintriage/bytes.hpp"

namespace bintriage::binary {

enum class Format { Elf, Pe };
enum class Arch { X86_64, Unknown };
enum class StringEncoding { Ascii, Utf16le };

std::string_view format_name(Format f);
std::string_view arch_name(Arch a);

struct SectionRecord {
    std::string name;
    std::uint64_t file_offset = 0;
    std::uint64_t virtual_addr = 0;
    std::uint64_t size = 0;          // bytes backed by the file (truncation-clipped)
    std::uint64_t virtual_size = 0;  // mapped extent; >= size for PE, == size for ELF
    bool executable = false;
    bool writable = false;
    bool readable = false;
    bool mapped = false;  // participates in address translation

    bool contains_va(std::uint64_t va) const {
        return mapped && va >= virtual_addr && va < virtual_addr + virtual_size;
    }
};

struct ImportRef {
    std::string symbol;
    std::string source_library;                   // DLL name for PE, empty for ELF
    std::vector<std::uint64_t> call_site_addrs;   // filled by the xref pass
    std::vector<std::uint64_t> thunk_addrs;       // PLT entries + GOT slots / IAT slots
};

struct StringRef {
    std::string value;
    std::uint64_t addr = 0;  // virtual address of the first unit
    StringEncoding encoding = StringEncoding::Ascii;

    std::uint64_t byte_length() const {
        return encoding == StringEncoding::Ascii ? value.size() : value.size() * 2;
    }
};

struct SymbolRecord {
    std::string name;
    std::uint64_t addr = 0;
};

struct BinaryImage {
    std::string path;
    Format format = Format::Elf;
    Arch arch = Arch::Unknown;
    std::uint64_t entry_point = 0;
    std::vector<SectionRecord> sections;
    std::vector<ImportRef> imports;
    std::vector<StringRef> strings;
    std::vector<SymbolRecord> function_symbols;  // defined function symbols / exports
    std::vector<std::string> dependencies;       // DT_NEEDED names / imported DLLs
    Bytes bytes;
    std::array<std::uint8_t, 32> content_hash{};
    std::vector<std::string> warnings;

    const SectionRecord* section_containing_va(std::uint64_t va) const;
    const SectionRecord* section_by_name(std::string_view name) const;
    std::optional<std::uint64_t> va_to_offset(std::uint64_t va) const;
    std::optional<std::uint64_t> offset_to_va(std::uint64_t off) const;

    // File-backed bytes at a virtual address, clipped to the section end.
    ByteView va_bytes(std::uint64_t va, std::uint64_t max_len) const;

    const ImportRef* import_for_thunk(std::uint64_t addr) const;
};

// Parses an ELF or PE file. Throws TriageError with codes UNRECOGNIZED_FORMAT,
// MALFORMED_HEADER or TRUNCATED_FILE; recoverable defects (a section running
// past EOF) are clipped and recorded in warnings instead.
BinaryImage load_image(const std::string& path);
BinaryImage load_image_bytes(Bytes bytes, std::string path_label = "<memory>");

struct ResolvedDependencies {
    std::vector<BinaryImage> loaded;
    std::vector<std::string> unresolved;
};

// Recursively loads declared dependencies found in search_paths (each library
// once; cycles ignored). Only the supplied paths are consulted.
ResolvedDependencies resolve_dependencies(const BinaryImage& image,
                                          const std::vector<std::string>& search_paths);

// Maximal printable-ASCII and UTF-16LE runs of at least min_len characters in
// readable sections, ordered by address.
std::vector<StringRef> extract_strings(const BinaryImage& image, std::size_t min_len = 4);

}  // namespace bintriage::binary

#include "bintriage/binary/image.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "bintriage/error.hpp"

namespace bintriage::binary {

std::string_view format_name(Format f) { return f == Format::Elf ? "ELF" : "PE"; }
std::string_view arch_name(Arch a) { return a == Arch::X86_64 ? "X86_64" : "UNKNOWN"; }

const SectionRecord* BinaryImage::section_containing_va(std::uint64_t va) const {
    for (const auto& s : sections) {
        if (s.contains_va(va)) return &s;
    }
    return nullptr;
}

const SectionRecord* BinaryImage::section_by_name(std::string_view name) const {
    for (const auto& s : sections) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::optional<std::uint64_t> BinaryImage::va_to_offset(std::uint64_t va) const {
    const SectionRecord* s = section_containing_va(va);
    if (!s) return std::nullopt;
    const std::uint64_t delta = va - s->virtual_addr;
    if (delta >= s->size) return std::nullopt;  // virtual-only tail (.bss style)
    return s->file_offset + delta;
}

std::optional<std::uint64_t> BinaryImage::offset_to_va(std::uint64_t off) const {
    for (const auto& s : sections) {
        if (s.mapped && off >= s.file_offset && off < s.file_offset + s.size) {
            return s.virtual_addr + (off - s.file_offset);
        }
    }
    return std::nullopt;
}

ByteView BinaryImage::va_bytes(std::uint64_t va, std::uint64_t max_len) const {
    const SectionRecord* s = section_containing_va(va);
    if (!s) return {};
    const std::uint64_t delta = va - s->virtual_addr;
    if (delta >= s->size) return {};
    const std::uint64_t avail = s->size - delta;
    const std::uint64_t len = std::min<std::uint64_t>(max_len, avail);
    return ByteView{bytes.data() + s->file_offset + delta, static_cast<std::size_t>(len)};
}

const ImportRef* BinaryImage::import_for_thunk(std::uint64_t addr) const {
    for (const auto& imp : imports) {
        for (std::uint64_t t : imp.thunk_addrs) {
            if (t == addr) return &imp;
        }
    }
    return nullptr;
}

namespace detail {
BinaryImage parse_elf(Bytes bytes, std::string path);
BinaryImage parse_pe(Bytes bytes, std::string path);
}  // namespace detail

namespace {

std::array<std::uint8_t, 32> sha256(ByteView data) {
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

void finalize(BinaryImage& img) {
    img.content_hash = sha256(img.bytes);
    img.strings = extract_strings(img, 4);
    std::sort(img.function_symbols.begin(), img.function_symbols.end(),
              [](const SymbolRecord& a, const SymbolRecord& b) {
                  return a.addr != b.addr ? a.addr < b.addr : a.name < b.name;
              });
}

}  // namespace

BinaryImage load_image_bytes(Bytes bytes, std::string path_label) {
    if (bytes.empty()) throw TriageError("TRUNCATED_FILE", path_label + ": empty input");
    BinaryImage img;
    if (bytes.size() >= 4 && bytes[0] == 0x7f && bytes[1] == 'E' && bytes[2] == 'L' &&
        bytes[3] == 'F') {
        img = detail::parse_elf(std::move(bytes), std::move(path_label));
    } else if (bytes.size() >= 2 && bytes[0] == 'M' && bytes[1] == 'Z') {
        img = detail::parse_pe(std::move(bytes), std::move(path_label));
    } else {
        throw TriageError("UNRECOGNIZED_FORMAT",
                          path_label + ": no ELF or PE magic at offset 0");
    }
    finalize(img);
    return img;
}

BinaryImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TriageError("INPUT_NOT_FOUND", path + ": cannot open");
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.empty()) throw TriageError("TRUNCATED_FILE", path + ": empty file");
    return load_image_bytes(std::move(data), path);
}

namespace {

std::string lower_name(std::string_view s) { return ascii_lower_copy(s); }

std::optional<std::string> find_in_paths(const std::string& name,
                                         const std::vector<std::string>& search_paths,
                                         bool case_insensitive) {
    namespace fs = std::filesystem;
    for (const auto& dir : search_paths) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        if (!case_insensitive) {
            fs::path candidate = fs::path(dir) / name;
            if (fs::exists(candidate, ec)) return candidate.string();
            continue;
        }
        const std::string want = lower_name(name);
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (lower_name(entry.path().filename().string()) == want) {
                return entry.path().string();
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ResolvedDependencies resolve_dependencies(const BinaryImage& image,
                                          const std::vector<std::string>& search_paths) {
    ResolvedDependencies result;
    std::vector<std::string> visited;  // normalized dependency names already handled
    std::vector<const BinaryImage*> queue_refs;

    auto normalized = [&](const std::string& name, Format f) {
        return f == Format::Pe ? lower_name(name) : name;
    };

    std::vector<std::string> pending;
    for (const auto& dep : image.dependencies) pending.push_back(dep);
    visited.push_back(normalized(std::filesystem::path(image.path).filename().string(),
                                 image.format));

    while (!pending.empty()) {
        const std::string name = pending.front();
        pending.erase(pending.begin());
        const std::string key = normalized(name, image.format);
        if (std::find(visited.begin(), visited.end(), key) != visited.end()) continue;
        visited.push_back(key);

        auto found = find_in_paths(name, search_paths, image.format == Format::Pe);
        if (!found) {
            result.unresolved.push_back(name);
            continue;
        }
        try {
            BinaryImage dep_img = load_image(*found);
            for (const auto& sub : dep_img.dependencies) pending.push_back(sub);
            result.loaded.push_back(std::move(dep_img));
        } catch (const TriageError& e) {
            result.unresolved.push_back(name + " (" + e.code() + ")");
        }
    }
    return result;
}

}  // namespace bintriage::binary

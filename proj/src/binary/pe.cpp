#include <algorithm>
#include <cstring>

#include "bintriage/binary/image.hpp"
#include "bintriage/error.hpp"

namespace bintriage::binary::detail {

namespace {

constexpr std::uint16_t kDosMagic = 0x5a4d;       // "MZ"
constexpr std::uint32_t kPeSignature = 0x4550;    // "PE\0\0"
constexpr std::uint16_t kMachineAmd64 = 0x8664;
constexpr std::uint16_t kPe32PlusMagic = 0x20b;

constexpr std::uint32_t kScnCode = 0x00000020;
constexpr std::uint32_t kScnExecute = 0x20000000;
constexpr std::uint32_t kScnRead = 0x40000000;
constexpr std::uint32_t kScnWrite = 0x80000000;

struct PeLayout {
    std::uint64_t image_base = 0;
    std::uint32_t entry_rva = 0;
    std::uint32_t import_dir_rva = 0;
    std::uint32_t import_dir_size = 0;
    std::uint32_t export_dir_rva = 0;
    std::uint32_t export_dir_size = 0;
};

void require(bool ok, const std::string& path, const std::string& field, const std::string& why) {
    if (!ok) throw TriageError("MALFORMED_HEADER", path + ": " + field + ": " + why);
}

}  // namespace

BinaryImage parse_pe(Bytes bytes, std::string path) {
    BinaryImage img;
    img.path = std::move(path);
    img.format = Format::Pe;

    require(bytes.size() >= 0x40, img.path, "dos_header", "file shorter than DOS header");
    require(read_u16(bytes, 0) == kDosMagic, img.path, "e_magic", "missing MZ magic");
    const std::uint32_t pe_off = read_u32(bytes, 0x3c);
    if (pe_off + 24 > bytes.size()) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_lfanew: PE header offset " +
                                                  std::to_string(pe_off) + " exceeds file size");
    }
    require(read_u32(bytes, pe_off) == kPeSignature, img.path, "pe_signature", "missing PE\\0\\0");

    const std::uint64_t coff = pe_off + 4;
    const std::uint16_t machine = read_u16(bytes, coff);
    const std::uint16_t num_sections = read_u16(bytes, coff + 2);
    const std::uint16_t opt_size = read_u16(bytes, coff + 16);
    img.arch = machine == kMachineAmd64 ? Arch::X86_64 : Arch::Unknown;

    const std::uint64_t opt = coff + 20;
    require(opt + opt_size <= bytes.size(), img.path, "optional_header", "extends past end of file");
    require(opt_size >= 112, img.path, "optional_header", "too small for PE32+");
    require(read_u16(bytes, opt) == kPe32PlusMagic, img.path, "optional_header.magic",
            "only PE32+ (64-bit) supported");

    PeLayout layout;
    layout.entry_rva = read_u32(bytes, opt + 16);
    layout.image_base = read_u64(bytes, opt + 24);
    const std::uint32_t num_dirs = read_u32(bytes, opt + 108);
    if (num_dirs > 0 && opt + 112 + 8 <= opt + opt_size) {
        layout.export_dir_rva = read_u32(bytes, opt + 112);
        layout.export_dir_size = read_u32(bytes, opt + 116);
    }
    if (num_dirs > 1 && opt + 120 + 8 <= opt + opt_size) {
        layout.import_dir_rva = read_u32(bytes, opt + 120);
        layout.import_dir_size = read_u32(bytes, opt + 124);
    }
    img.entry_point = layout.image_base + layout.entry_rva;

    const std::uint64_t sect_table = opt + opt_size;
    require(sect_table + static_cast<std::uint64_t>(num_sections) * 40 <= bytes.size(), img.path,
            "section_table", "extends past end of file");
    for (std::uint16_t i = 0; i < num_sections; ++i) {
        const std::uint64_t e = sect_table + static_cast<std::uint64_t>(i) * 40;
        SectionRecord rec;
        char name[9] = {};
        std::memcpy(name, bytes.data() + e, 8);
        rec.name = name;
        const std::uint32_t vsize = read_u32(bytes, e + 8);
        const std::uint32_t vaddr = read_u32(bytes, e + 12);
        const std::uint32_t rawsize = read_u32(bytes, e + 16);
        const std::uint32_t rawptr = read_u32(bytes, e + 20);
        const std::uint32_t chars = read_u32(bytes, e + 36);
        rec.virtual_addr = layout.image_base + vaddr;
        rec.virtual_size = std::max(vsize, rawsize);
        rec.file_offset = rawptr;
        rec.size = rawsize;
        rec.executable = (chars & (kScnExecute | kScnCode)) != 0;
        rec.writable = (chars & kScnWrite) != 0;
        rec.readable = (chars & kScnRead) != 0;
        rec.mapped = true;
        if (rawptr > bytes.size()) {
            img.warnings.push_back("section " + rec.name + ": raw data offset past end of file; dropped contents");
            rec.size = 0;
        } else if (static_cast<std::uint64_t>(rawptr) + rawsize > bytes.size()) {
            rec.size = bytes.size() - rawptr;
            img.warnings.push_back("section " + rec.name + ": extends past end of file; truncated to " +
                                   std::to_string(rec.size) + " bytes");
        }
        img.sections.push_back(std::move(rec));
    }

    auto rva_to_off = [&](std::uint64_t rva) -> std::optional<std::uint64_t> {
        return img.va_to_offset(layout.image_base + rva);
    };
    auto cstr_at_rva = [&](std::uint64_t rva) -> std::string {
        auto off = rva_to_off(rva);
        if (!off) return {};
        std::string out;
        for (std::uint64_t i = *off; i < bytes.size() && bytes[i] != 0; ++i) {
            out.push_back(static_cast<char>(bytes[i]));
        }
        return out;
    };

    // Import directory: 20-byte descriptors terminated by an all-zero entry.
    if (layout.import_dir_rva != 0) {
        std::uint64_t desc_rva = layout.import_dir_rva;
        for (int guard = 0; guard < 256; ++guard, desc_rva += 20) {
            auto off = rva_to_off(desc_rva);
            if (!off || *off + 20 > bytes.size()) {
                img.warnings.push_back("import directory runs outside mapped sections; truncated walk");
                break;
            }
            const std::uint32_t ilt_rva = read_u32(bytes, *off);
            const std::uint32_t name_rva = read_u32(bytes, *off + 12);
            const std::uint32_t iat_rva = read_u32(bytes, *off + 16);
            if (ilt_rva == 0 && name_rva == 0 && iat_rva == 0) break;

            const std::string dll = cstr_at_rva(name_rva);
            if (!dll.empty()) img.dependencies.push_back(dll);

            const std::uint32_t thunks_rva = ilt_rva != 0 ? ilt_rva : iat_rva;
            for (std::uint32_t t = 0;; t += 8) {
                auto toff = rva_to_off(thunks_rva + t);
                if (!toff || *toff + 8 > bytes.size()) break;
                const std::uint64_t entry = read_u64(bytes, *toff);
                if (entry == 0) break;
                std::string symbol;
                if (entry & (1ull << 63)) {
                    symbol = "#" + std::to_string(entry & 0xffff);
                } else {
                    symbol = cstr_at_rva((entry & 0x7fffffff) + 2);  // skip hint
                }
                if (symbol.empty()) continue;
                ImportRef* ref = nullptr;
                for (auto& imp : img.imports) {
                    if (imp.symbol == symbol && imp.source_library == dll) ref = &imp;
                }
                if (!ref) {
                    img.imports.push_back({symbol, dll, {}, {}});
                    ref = &img.imports.back();
                }
                ref->thunk_addrs.push_back(layout.image_base + iat_rva + t);
            }
        }
    }

    // Export table: exported code entry points count as function symbols.
    if (layout.export_dir_rva != 0) {
        auto off = rva_to_off(layout.export_dir_rva);
        if (off && *off + 40 <= bytes.size()) {
            const std::uint32_t num_names = read_u32(bytes, *off + 24);
            const std::uint32_t funcs_rva = read_u32(bytes, *off + 28);
            const std::uint32_t names_rva = read_u32(bytes, *off + 32);
            const std::uint32_t ords_rva = read_u32(bytes, *off + 36);
            for (std::uint32_t i = 0; i < num_names; ++i) {
                auto name_entry = rva_to_off(names_rva + i * 4);
                auto ord_entry = rva_to_off(ords_rva + i * 2);
                if (!name_entry || !ord_entry) break;
                const std::uint32_t name_rva = read_u32(bytes, *name_entry);
                const std::uint16_t ordinal = read_u16(bytes, *ord_entry);
                auto func_entry = rva_to_off(funcs_rva + static_cast<std::uint64_t>(ordinal) * 4);
                if (!func_entry) continue;
                const std::uint32_t func_rva = read_u32(bytes, *func_entry);
                img.function_symbols.push_back(
                    {cstr_at_rva(name_rva), layout.image_base + func_rva});
            }
        }
    }

    return img;
}

}  // namespace bintriage::binary::detail

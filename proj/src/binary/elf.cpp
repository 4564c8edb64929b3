#include <elf.h>

#include <algorithm>
#include <cstring>

#include "bintriage/binary/image.hpp"
#include "bintriage/error.hpp"

namespace bintriage::binary::detail {

namespace {

template <typename T>
T read_struct(const Bytes& b, std::uint64_t off, const char* what) {
    if (off + sizeof(T) > b.size()) {
        throw TriageError("MALFORMED_HEADER",
                          std::string(what) + ": offset " + std::to_string(off) +
                              " + size " + std::to_string(sizeof(T)) + " exceeds file size " +
                              std::to_string(b.size()));
    }
    T out;
    std::memcpy(&out, b.data() + off, sizeof(T));
    return out;
}

std::string str_at(const Bytes& b, std::uint64_t table_off, std::uint64_t table_size,
                   std::uint64_t index) {
    if (index >= table_size) return {};
    const std::uint64_t start = table_off + index;
    std::string out;
    for (std::uint64_t i = start; i < table_off + table_size && i < b.size() && b[i] != 0; ++i) {
        out.push_back(static_cast<char>(b[i]));
    }
    return out;
}

}  // namespace

BinaryImage parse_elf(Bytes bytes, std::string path) {
    BinaryImage img;
    img.path = std::move(path);
    img.format = Format::Elf;

    if (bytes.size() < sizeof(Elf64_Ehdr)) {
        throw TriageError("TRUNCATED_FILE", img.path + ": shorter than the ELF header");
    }
    const auto ehdr = read_struct<Elf64_Ehdr>(bytes, 0, "e_ehdr");
    if (ehdr.e_ident[EI_CLASS] != ELFCLASS64) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_ident[EI_CLASS]: only 64-bit ELF supported");
    }
    if (ehdr.e_ident[EI_DATA] != ELFDATA2LSB) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_ident[EI_DATA]: only little-endian ELF supported");
    }
    img.arch = ehdr.e_machine == EM_X86_64 ? Arch::X86_64 : Arch::Unknown;
    img.entry_point = ehdr.e_entry;

    if (ehdr.e_shoff == 0 || ehdr.e_shnum == 0) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_shoff: no section header table");
    }
    if (ehdr.e_shentsize != sizeof(Elf64_Shdr)) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_shentsize: unexpected value " +
                                                  std::to_string(ehdr.e_shentsize));
    }
    if (ehdr.e_shoff + static_cast<std::uint64_t>(ehdr.e_shnum) * sizeof(Elf64_Shdr) >
        bytes.size()) {
        throw TriageError("MALFORMED_HEADER",
                          img.path + ": e_shoff: section header table exceeds file size");
    }

    std::vector<Elf64_Shdr> shdrs(ehdr.e_shnum);
    for (std::uint16_t i = 0; i < ehdr.e_shnum; ++i) {
        shdrs[i] = read_struct<Elf64_Shdr>(bytes, ehdr.e_shoff + i * sizeof(Elf64_Shdr), "e_shoff");
    }
    if (ehdr.e_shstrndx >= shdrs.size()) {
        throw TriageError("MALFORMED_HEADER", img.path + ": e_shstrndx: index out of range");
    }
    const Elf64_Shdr& shstr = shdrs[ehdr.e_shstrndx];
    if (shstr.sh_offset + shstr.sh_size > bytes.size()) {
        throw TriageError("MALFORMED_HEADER", img.path + ": .shstrtab: extends past end of file");
    }

    for (std::uint16_t i = 0; i < shdrs.size(); ++i) {
        const Elf64_Shdr& sh = shdrs[i];
        if (sh.sh_type == SHT_NULL) continue;
        SectionRecord rec;
        rec.name = str_at(bytes, shstr.sh_offset, shstr.sh_size, sh.sh_name);
        rec.virtual_addr = sh.sh_addr;
        rec.virtual_size = sh.sh_size;
        rec.executable = (sh.sh_flags & SHF_EXECINSTR) != 0;
        rec.writable = (sh.sh_flags & SHF_WRITE) != 0;
        rec.readable = (sh.sh_flags & SHF_ALLOC) != 0;
        rec.mapped = (sh.sh_flags & SHF_ALLOC) != 0 && sh.sh_addr != 0;
        if (sh.sh_type == SHT_NOBITS) {
            rec.file_offset = 0;
            rec.size = 0;
        } else {
            rec.file_offset = sh.sh_offset;
            rec.size = sh.sh_size;
            if (sh.sh_offset > bytes.size()) {
                img.warnings.push_back("section " + rec.name + ": sh_offset past end of file; dropped contents");
                rec.size = 0;
            } else if (sh.sh_offset + sh.sh_size > bytes.size()) {
                rec.size = bytes.size() - sh.sh_offset;
                img.warnings.push_back("section " + rec.name + ": extends past end of file; truncated to " +
                                       std::to_string(rec.size) + " bytes");
            }
        }
        img.sections.push_back(std::move(rec));
    }

    // Symbol tables: defined function symbols feed function discovery; undefined
    // dynamic symbols become imports.
    auto scan_symtab = [&](const Elf64_Shdr& sh, bool dynamic) {
        if (sh.sh_link >= shdrs.size()) return;
        const Elf64_Shdr& strtab = shdrs[sh.sh_link];
        if (sh.sh_offset + sh.sh_size > bytes.size() ||
            strtab.sh_offset + strtab.sh_size > bytes.size()) {
            img.warnings.push_back("symbol table extends past end of file; ignored");
            return;
        }
        const std::uint64_t count = sh.sh_entsize ? sh.sh_size / sh.sh_entsize : 0;
        for (std::uint64_t i = 1; i < count; ++i) {
            const auto sym =
                read_struct<Elf64_Sym>(bytes, sh.sh_offset + i * sh.sh_entsize, "symtab entry");
            const std::string name = str_at(bytes, strtab.sh_offset, strtab.sh_size, sym.st_name);
            if (name.empty()) continue;
            const unsigned type = ELF64_ST_TYPE(sym.st_info);
            if (sym.st_shndx == SHN_UNDEF) {
                if (dynamic && (type == STT_FUNC || type == STT_NOTYPE)) {
                    if (std::none_of(img.imports.begin(), img.imports.end(),
                                     [&](const ImportRef& r) { return r.symbol == name; })) {
                        img.imports.push_back({name, "", {}, {}});
                    }
                }
            } else if (type == STT_FUNC && sym.st_value != 0) {
                img.function_symbols.push_back({name, sym.st_value});
            }
        }
    };

    const Elf64_Shdr* dynamic_sh = nullptr;
    const Elf64_Shdr* rela_plt = nullptr;
    const Elf64_Shdr* plt_sh = nullptr;
    const Elf64_Shdr* dynsym_sh = nullptr;
    for (std::uint16_t i = 0; i < shdrs.size(); ++i) {
        const std::string name = str_at(bytes, shstr.sh_offset, shstr.sh_size, shdrs[i].sh_name);
        if (shdrs[i].sh_type == SHT_DYNSYM) {
            dynsym_sh = &shdrs[i];
            scan_symtab(shdrs[i], true);
        } else if (shdrs[i].sh_type == SHT_SYMTAB) {
            scan_symtab(shdrs[i], false);
        } else if (shdrs[i].sh_type == SHT_DYNAMIC) {
            dynamic_sh = &shdrs[i];
        } else if (shdrs[i].sh_type == SHT_RELA && name == ".rela.plt") {
            rela_plt = &shdrs[i];
        }
        if (name == ".plt") plt_sh = &shdrs[i];
    }

    if (dynamic_sh && dynamic_sh->sh_link < shdrs.size()) {
        const Elf64_Shdr& strtab = shdrs[dynamic_sh->sh_link];
        const std::uint64_t count = dynamic_sh->sh_size / sizeof(Elf64_Dyn);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto dyn = read_struct<Elf64_Dyn>(
                bytes, dynamic_sh->sh_offset + i * sizeof(Elf64_Dyn), ".dynamic entry");
            if (dyn.d_tag == DT_NULL) break;
            if (dyn.d_tag == DT_NEEDED) {
                img.dependencies.push_back(
                    str_at(bytes, strtab.sh_offset, strtab.sh_size, dyn.d_un.d_val));
            }
        }
    }

    // Thunk mapping: .rela.plt gives symbol -> GOT slot; the PLT entry that
    // jumps through a slot is recovered from its rip-relative displacement
    // (ff 25 disp32 at entry start).
    if (rela_plt && dynsym_sh && dynsym_sh->sh_link < shdrs.size()) {
        const Elf64_Shdr& dynstr = shdrs[dynsym_sh->sh_link];
        std::vector<std::pair<std::uint64_t, std::string>> slot_to_symbol;
        const std::uint64_t count = rela_plt->sh_size / sizeof(Elf64_Rela);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto rela = read_struct<Elf64_Rela>(
                bytes, rela_plt->sh_offset + i * sizeof(Elf64_Rela), ".rela.plt entry");
            const std::uint64_t sym_index = ELF64_R_SYM(rela.r_info);
            const auto sym = read_struct<Elf64_Sym>(
                bytes, dynsym_sh->sh_offset + sym_index * dynsym_sh->sh_entsize, ".dynsym entry");
            const std::string name = str_at(bytes, dynstr.sh_offset, dynstr.sh_size, sym.st_name);
            if (name.empty()) continue;
            slot_to_symbol.emplace_back(rela.r_offset, name);
            for (auto& imp : img.imports) {
                if (imp.symbol == name) imp.thunk_addrs.push_back(rela.r_offset);
            }
        }
        if (plt_sh && plt_sh->sh_offset + plt_sh->sh_size <= bytes.size()) {
            for (std::uint64_t off = 0; off + 6 <= plt_sh->sh_size; off += 16) {
                const std::uint64_t p = plt_sh->sh_offset + off;
                if (bytes[p] != 0xff || bytes[p + 1] != 0x25) continue;
                const std::int32_t disp = static_cast<std::int32_t>(read_u32(bytes, p + 2));
                const std::uint64_t entry_va = plt_sh->sh_addr + off;
                const std::uint64_t slot = entry_va + 6 + static_cast<std::int64_t>(disp);
                for (const auto& [slot_va, name] : slot_to_symbol) {
                    if (slot_va != slot) continue;
                    for (auto& imp : img.imports) {
                        if (imp.symbol == name) imp.thunk_addrs.push_back(entry_va);
                    }
                }
            }
        }
    }

    return img;
}

}  // namespace bintriage::binary::detail

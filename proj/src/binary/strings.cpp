#include <algorithm>

#include "bintriage/binary/image.hpp"
#include "bintriage/bytescan/kernels.hpp"
#include "bintriage/error.hpp"

namespace bintriage::binary {

std::vector<StringRef> extract_strings(const BinaryImage& image, std::size_t min_len) {
    if (min_len < 2) throw TriageError("BAD_ARGUMENT", "extract_strings: min_len must be >= 2");

    const auto& kernels = bytescan::active();
    std::vector<StringRef> out;
    std::vector<bytescan::Run> runs;

    for (const auto& sec : image.sections) {
        if (!sec.readable || !sec.mapped || sec.size == 0) continue;
        const ByteView data{image.bytes.data() + sec.file_offset,
                            static_cast<std::size_t>(sec.size)};

        runs.clear();
        kernels.ascii_runs(data, min_len, runs);
        for (const auto& r : runs) {
            StringRef ref;
            ref.value.assign(reinterpret_cast<const char*>(data.data() + r.offset), r.length);
            ref.addr = sec.virtual_addr + r.offset;
            ref.encoding = StringEncoding::Ascii;
            out.push_back(std::move(ref));
        }

        runs.clear();
        kernels.utf16le_runs(data, min_len, runs);
        for (const auto& r : runs) {
            StringRef ref;
            ref.value.reserve(r.length);
            for (std::size_t i = 0; i < r.length; ++i) {
                ref.value.push_back(static_cast<char>(data[r.offset + i * 2]));
            }
            ref.addr = sec.virtual_addr + r.offset;
            ref.encoding = StringEncoding::Utf16le;
            out.push_back(std::move(ref));
        }
    }

    std::sort(out.begin(), out.end(), [](const StringRef& a, const StringRef& b) {
        if (a.addr != b.addr) return a.addr < b.addr;
        return a.encoding < b.encoding;
    });
    return out;
}

}  // namespace bintriage::binary

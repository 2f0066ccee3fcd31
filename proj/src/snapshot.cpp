#include "mps/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mps {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; add byte swapping for this target");

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::istream& is, std::streamoff& offset) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    if (!is)
        throw std::runtime_error("snapshot: truncated header at byte offset " +
                                 std::to_string(offset));
    offset += 4;
    return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralVectorField& f) {
    os.write(kSnapshotMagic, 4);
    put_u32(os, kSnapshotVersion);
    put_u32(os, static_cast<std::uint32_t>(f.grid.dim));
    put_u32(os, static_cast<std::uint32_t>(f.grid.n));
    put_u32(os, static_cast<std::uint32_t>(f.ncomp()));
    for (const auto& comp : f.comp)
        os.write(reinterpret_cast<const char*>(comp.c.data()),
                 static_cast<std::streamsize>(comp.c.size() * sizeof(cplx)));
    if (!os) throw std::runtime_error("snapshot: write failed");
}

void write_snapshot(std::ostream& os, const SpectralScalarField& f) {
    SpectralVectorField wrap(f.grid, 0);
    wrap.comp.push_back(f);
    write_snapshot(os, wrap);
}

SpectralVectorField read_snapshot(std::istream& is) {
    std::streamoff offset = 0;
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kSnapshotMagic, 4) != 0)
        throw std::runtime_error("snapshot: bad magic at byte offset 0");
    offset = 4;

    std::uint32_t version = get_u32(is, offset);
    if (version != kSnapshotVersion)
        throw std::runtime_error("snapshot: unsupported version " +
                                 std::to_string(version) + " at byte offset 4");
    std::uint32_t dim = get_u32(is, offset);
    std::uint32_t n = get_u32(is, offset);
    std::uint32_t ncomp = get_u32(is, offset);
    if ((dim != 2 && dim != 3) || n < 8 || n % 2 != 0 || ncomp == 0 || ncomp > 3)
        throw std::runtime_error(
            "snapshot: implausible header (dim=" + std::to_string(dim) +
            " n=" + std::to_string(n) + " ncomp=" + std::to_string(ncomp) +
            ") ending at byte offset " + std::to_string(offset));

    Grid g = make_grid(static_cast<int>(dim), static_cast<int>(n));
    SpectralVectorField f(g, static_cast<int>(ncomp));
    for (auto& comp : f.comp) {
        is.read(reinterpret_cast<char*>(comp.c.data()),
                static_cast<std::streamsize>(comp.c.size() * sizeof(cplx)));
        if (!is)
            throw std::runtime_error(
                "snapshot: truncated payload at byte offset " +
                std::to_string(offset + is.gcount()));
        offset += static_cast<std::streamoff>(comp.c.size() * sizeof(cplx));
    }
    return f;
}

void write_snapshot_file(const std::string& path, const SpectralVectorField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path);
    write_snapshot(os, f);
}

SpectralVectorField read_snapshot_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    return read_snapshot(is);
}

}  // namespace mps

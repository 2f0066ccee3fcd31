#pragma once
// Field snapshot serialization. Layout (little-endian throughout):
//   bytes 0..3   magic "MPSF"
//   u32          format version (currently 1)
//   u32          dim (2 or 3)
//   u32          n (points per axis)
//   u32          component count
//   then, per component, n^dim coefficients as (f64 real, f64 imag) pairs in
//   row-major lattice order (last axis fastest), components consecutive.
// Scalars are written as component count 1. Read errors report the byte
// offset at which the stream became inconsistent.

#include <iosfwd>
#include <string>

#include "mps/field.hpp"

namespace mps {

inline constexpr char kSnapshotMagic[4] = {'M', 'P', 'S', 'F'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(std::ostream& os, const SpectralVectorField& f);
void write_snapshot(std::ostream& os, const SpectralScalarField& f);

SpectralVectorField read_snapshot(std::istream& is);

void write_snapshot_file(const std::string& path, const SpectralVectorField& f);
SpectralVectorField read_snapshot_file(const std::string& path);

}  // namespace mps

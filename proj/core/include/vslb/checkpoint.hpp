#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>

#include "vslb/spectral_field.hpp"

namespace vslb {

// Binary field checkpoint, little-endian throughout:
//   "VSLB" | u32 version | u32 n | u32 components (1 or 3) | f64 time |
//   for m1, m2, m3 ascending over {-n/2+1..n/2}: for each component: f64 re, f64 im.
// All n^3 index triples are written, including the negative-m3 half implied by symmetry.

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  double time = 0.0;
  std::variant<SpectralField, ScalarSpectralField> field;
};

void write_checkpoint(std::ostream& out, const SpectralField& field, double time);
void write_checkpoint(std::ostream& out, const ScalarSpectralField& field, double time);
void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time);

/// Reads a checkpoint onto a lattice of the stored n with the given dealias fraction.
/// Throws FormatError on bad magic/version/size and HermitianError on asymmetric data.
Checkpoint read_checkpoint(std::istream& in, Rational dealias_fraction = {2, 3});
Checkpoint read_checkpoint(const std::filesystem::path& path, Rational dealias_fraction = {2, 3});

}  // namespace vslb

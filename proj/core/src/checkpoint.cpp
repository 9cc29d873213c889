#include "vslb/checkpoint.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "vslb/transforms.hpp"

namespace vslb {
namespace {

constexpr std::array<char, 4> kMagic{'V', 'S', 'L', 'B'};

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t b = 0; b < sizeof(U); ++b) bytes[b] = static_cast<char>((value >> (8 * b)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw FormatError("checkpoint: truncated stream");
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) value |= static_cast<U>(bytes[b]) << (8 * b);
  return value;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

template <int C>
void write_impl(std::ostream& out, const FieldCoeffs<C>& field, double time) {
  const Lattice& lat = field.lattice();
  const int n = lat.n();
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kCheckpointVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(C));
  put_f64(out, time);
  const int lo = -n / 2 + 1, hi = n / 2;
  for (int m1 = lo; m1 <= hi; ++m1) {
    for (int m2 = lo; m2 <= hi; ++m2) {
      for (int m3 = lo; m3 <= hi; ++m3) {
        for (int c = 0; c < C; ++c) {
          const Complex v = field.coeff(c, m1, m2, m3);
          put_f64(out, v.real());
          put_f64(out, v.imag());
        }
      }
    }
  }
  if (!out) throw FormatError("checkpoint: write failed");
}

template <int C>
FieldCoeffs<C> read_body(std::istream& in, const Lattice& lat) {
  const int n = lat.n();
  const auto un = static_cast<std::size_t>(n);
  // full[c][p1][p2][p3] with p = array position of the signed index
  std::vector<Complex> full(static_cast<std::size_t>(C) * un * un * un);
  auto at = [&](int c, int m1, int m2, int m3) -> Complex& {
    const auto p1 = static_cast<std::size_t>(lat.position(m1));
    const auto p2 = static_cast<std::size_t>(lat.position(m2));
    const auto p3 = static_cast<std::size_t>(lat.position(m3));
    return full[((static_cast<std::size_t>(c) * un + p1) * un + p2) * un + p3];
  };
  const int lo = -n / 2 + 1, hi = n / 2;
  for (int m1 = lo; m1 <= hi; ++m1) {
    for (int m2 = lo; m2 <= hi; ++m2) {
      for (int m3 = lo; m3 <= hi; ++m3) {
        for (int c = 0; c < C; ++c) {
          const double re = get_f64(in);
          const double im = get_f64(in);
          at(c, m1, m2, m3) = Complex{re, im};
        }
      }
    }
  }
  // -(n/2) aliases n/2
  auto neg = [hi](int m) { return m == hi ? hi : -m; };
  double max_abs = 0.0, defect = 0.0;
  bool outside_mask = false;
  FieldCoeffs<C> field(lat);
  for (int m1 = lo; m1 <= hi; ++m1) {
    for (int m2 = lo; m2 <= hi; ++m2) {
      for (int m3 = lo; m3 <= hi; ++m3) {
        for (int c = 0; c < C; ++c) {
          const Complex v = at(c, m1, m2, m3);
          max_abs = std::max(max_abs, std::abs(v));
          defect = std::max(defect, std::abs(v - std::conj(at(c, neg(m1), neg(m2), neg(m3)))));
          if (v != 0.0 && !lat.retained(m1, m2, m3)) outside_mask = true;
          if (m3 >= 0) field(c, lat.mode_offset(lat.position(m1), lat.position(m2), m3)) = v;
        }
      }
    }
  }
  if (max_abs > 0.0 && defect / max_abs > kHermitianTolerance) {
    throw HermitianError("checkpoint: coefficients are not Hermitian-symmetric");
  }
  if (outside_mask) throw FormatError("checkpoint: nonzero coefficients outside the dealias-retained set");
  return field;
}

}  // namespace

void write_checkpoint(std::ostream& out, const SpectralField& field, double time) { write_impl(out, field, time); }
void write_checkpoint(std::ostream& out, const ScalarSpectralField& field, double time) {
  write_impl(out, field, time);
}

void write_checkpoint(const std::filesystem::path& path, const SpectralField& field, double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("checkpoint: cannot open " + path.string());
  write_impl(out, field, time);
}

Checkpoint read_checkpoint(std::istream& in, Rational dealias_fraction) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("checkpoint: bad magic");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw FormatError("checkpoint: unsupported version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(in);
  const auto components = get_le<std::uint32_t>(in);
  const double time = get_f64(in);
  if (n < 4 || n % 2 != 0 || n > 4096) throw FormatError("checkpoint: invalid n " + std::to_string(n));
  const Lattice lat(static_cast<int>(n), dealias_fraction);
  if (components == 3) return {time, read_body<3>(in, lat)};
  if (components == 1) return {time, read_body<1>(in, lat)};
  throw FormatError("checkpoint: component count must be 1 or 3, got " + std::to_string(components));
}

Checkpoint read_checkpoint(const std::filesystem::path& path, Rational dealias_fraction) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("checkpoint: cannot open " + path.string());
  return read_checkpoint(in, dealias_fraction);
}

}  // namespace vslb

#include "vslb/lattice.hpp"

#include <cstdlib>
#include <string>

#include "vslb/errors.hpp"

namespace vslb {

Lattice::Lattice(int n, Rational dealias_fraction) : n_(n), dealias_(dealias_fraction) {
  if (n < 4 || n % 2 != 0) {
    throw PreconditionError("lattice: n must be an even integer >= 4, got " + std::to_string(n));
  }
  if (dealias_.den <= 0 || dealias_.num <= 0 || dealias_.num > dealias_.den) {
    throw PreconditionError("lattice: dealias fraction must lie in (0, 1]");
  }
  // floor(f * n / 2) in exact integer arithmetic
  cutoff_ = static_cast<int>((dealias_.num * static_cast<std::int64_t>(n / 2)) / dealias_.den);
  signed_.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) signed_[static_cast<std::size_t>(p)] = p <= n / 2 ? p : p - n;
}


}  // namespace vslb

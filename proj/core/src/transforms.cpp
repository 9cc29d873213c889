#include "vslb/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "vslb/parallel.hpp"

namespace vslb {
namespace {

// FFTW_ESTIMATE keeps plan selection (and therefore roundoff) reproducible run to run;
// FFTW_UNALIGNED lets one plan serve any std::vector buffer through the new-array API.
class Plan {
 public:
  explicit Plan(int n) : n_(n) {
    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t complex_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(complex_size);
    forward_ = fftw_plan_dft_r2c_3d(n, n, n, r, c, FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_c2r_3d(n, n, n, c, r, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(r);
    fftw_free(c);
  }
  ~Plan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void forward(const double* in, Complex* out) const {
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  // destroys `in`
  void backward(Complex* in, double* out) const {
    fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(in), out);
  }

 private:
  int n_;
  fftw_plan forward_;
  fftw_plan backward_;
};

const Plan& plan_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Plan>> plans;
  std::lock_guard lock(mutex);
  auto& slot = plans[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

template <int C>
void mask_retained(FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  if (lat.cutoff() >= lat.nyquist()) return;
  const int n = lat.n();
  const int h = lat.half_extent();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < h; ++l) {
        if (lat.retained(lat.signed_index(i), lat.signed_index(j), l)) continue;
        const auto mode = lat.mode_offset(i, j, l);
        for (int c = 0; c < C; ++c) field(c, mode) = 0.0;
      }
    }
  }
}

}  // namespace

template <int C>
FieldCoeffs<C> to_spectral(const PhysicalGrid<C>& samples, const Lattice& lattice) {
  if (samples.n != lattice.n() || samples.values.size() != static_cast<std::size_t>(C) * lattice.grid_size()) {
    throw DimensionError("to_spectral: grid of " + std::to_string(samples.n) + "^3 x " +
                         std::to_string(samples.values.size()) + " values does not match lattice n=" +
                         std::to_string(lattice.n()));
  }
  FieldCoeffs<C> out(lattice);
  const Plan& plan = plan_for(lattice.n());
  const double scale = 1.0 / static_cast<double>(lattice.grid_size());
  parallel_for(C, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const int comp = static_cast<int>(c);
      plan.forward(samples.component(comp).data(), out.component(comp).data());
      for (auto& v : out.component(comp)) v *= scale;
    }
  });
  symmetrize_hermitian(out);
  mask_retained(out);
  return out;
}

template <int C>
PhysicalGrid<C> to_physical(const FieldCoeffs<C>& field) {
  const double defect = hermitian_defect(field);
  if (defect > kHermitianTolerance) {
    throw HermitianError("to_physical: Hermitian symmetry violated (relative defect " + std::to_string(defect) +
                         ")");
  }
  const Lattice& lat = field.lattice();
  PhysicalGrid<C> out(lat.n());
  const Plan& plan = plan_for(lat.n());
  parallel_for(C, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> scratch(lat.mode_count());
    for (std::size_t c = begin; c < end; ++c) {
      const int comp = static_cast<int>(c);
      auto src = field.component(comp);
      std::copy(src.begin(), src.end(), scratch.begin());
      plan.backward(scratch.data(), out.component(comp).data());
    }
  });
  return out;
}

template <int C>
double hermitian_defect(const FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  const int n = lat.n();
  double max_abs = 0.0;
  for (const auto& v : field.data()) max_abs = std::max(max_abs, std::norm(v));
  if (max_abs == 0.0) return 0.0;
  double worst = 0.0;
  for (int l : {0, lat.nyquist()}) {
    for (int i = 0; i < n; ++i) {
      const int ip = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jp = (n - j) % n;
        const auto a = lat.mode_offset(i, j, l);
        const auto b = lat.mode_offset(ip, jp, l);
        for (int c = 0; c < C; ++c) worst = std::max(worst, std::norm(field(c, a) - std::conj(field(c, b))));
      }
    }
  }
  return std::sqrt(worst / max_abs);
}

template <int C>
void symmetrize_hermitian(FieldCoeffs<C>& field) {
  const Lattice& lat = field.lattice();
  const int n = lat.n();
  for (int l : {0, lat.nyquist()}) {
    for (int i = 0; i < n; ++i) {
      const int ip = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jp = (n - j) % n;
        const auto a = lat.mode_offset(i, j, l);
        const auto b = lat.mode_offset(ip, jp, l);
        if (b < a) continue;
        for (int c = 0; c < C; ++c) {
          if (a == b) {
            field(c, a) = field(c, a).real();
          } else {
            const Complex mean = 0.5 * (field(c, a) + std::conj(field(c, b)));
            field(c, a) = mean;
            field(c, b) = std::conj(mean);
          }
        }
      }
    }
  }
}

template SpectralField to_spectral<3>(const VectorGrid&, const Lattice&);
template ScalarSpectralField to_spectral<1>(const ScalarGrid&, const Lattice&);
template VectorGrid to_physical<3>(const SpectralField&);
template ScalarGrid to_physical<1>(const ScalarSpectralField&);
template double hermitian_defect<3>(const SpectralField&);
template double hermitian_defect<1>(const ScalarSpectralField&);
template void symmetrize_hermitian<3>(SpectralField&);
template void symmetrize_hermitian<1>(ScalarSpectralField&);

}  // namespace vslb

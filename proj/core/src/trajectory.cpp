#include "vslb/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vslb {

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void Trajectory::push_back(double time, SpectralField field) {
  if (!samples_.empty()) {
    if (!(time > samples_.back().time)) {
      throw PreconditionError("trajectory: sample times must increase strictly");
    }
    if (!(field.lattice() == samples_.front().field.lattice())) {
      throw DimensionError("trajectory: all samples must share one lattice");
    }
  }
  samples_.push_back({time, std::move(field)});
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples_.size());
  for (const auto& s : samples_) t.push_back(s.time);
  return t;
}

SpectralField Trajectory::at(double t) const {
  if (samples_.empty()) throw PreconditionError("trajectory: empty");
  if (same_time(t, t_start())) return samples_.front().field;
  if (same_time(t, t_end())) return samples_.back().field;
  if (t < t_start() || t > t_end()) {
    throw PreconditionError("trajectory: time " + std::to_string(t) + " outside span");
  }
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const Sample& s, double value) { return s.time < value; });
  const std::size_t hi = static_cast<std::size_t>(it - samples_.begin());
  if (same_time(samples_[hi].time, t)) return samples_[hi].field;
  if (hi > 0 && same_time(samples_[hi - 1].time, t)) return samples_[hi - 1].field;
  const Sample& a = samples_[hi - 1];
  const Sample& b = samples_[hi];
  const double theta = (t - a.time) / (b.time - a.time);
  SpectralField out = a.field;
  out *= 1.0 - theta;
  out.add_scaled(theta, b.field);
  return out;
}

std::size_t Trajectory::count_within(double ta, double tb) const {
  std::size_t count = 0;
  for (const auto& s : samples_) {
    if ((s.time >= ta || same_time(s.time, ta)) && (s.time <= tb || same_time(s.time, tb))) ++count;
  }
  return count;
}

std::vector<QuadratureNode> trapezoid_nodes(std::span<const double> times, double ta, double tb) {
  std::vector<QuadratureNode> nodes;
  if (times.size() < 2 || !(tb > ta)) return nodes;
  std::vector<double> w(times.size(), 0.0);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k], t1 = times[k + 1];
    const double a = std::max(t0, ta), b = std::min(t1, tb);
    if (!(b > a) || same_time(a, b)) continue;
    // integral over [a, b] of the linear interpolant: weights of f_k and f_{k+1}
    const double h = t1 - t0;
    const double sa = (a - t0) / h, sb = (b - t0) / h;
    const double len = b - a;
    const double mean_theta = 0.5 * (sa + sb);
    w[k] += len * (1.0 - mean_theta);
    w[k + 1] += len * mean_theta;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] > 0.0) nodes.push_back({k, w[k]});
  }
  return nodes;
}

double trapezoid(std::span<const double> times, std::span<const double> values, double ta, double tb) {
  double acc = 0.0;
  for (const auto& node : trapezoid_nodes(times, ta, tb)) acc += node.weight * values[node.index];
  return acc;
}

namespace {

double composite_simpson(std::span<const double> times, std::span<const double> values) {
  const std::size_t intervals = times.size() < 2 ? 0 : times.size() - 1;
  if (intervals == 0) return 0.0;
  if (intervals == 1) return 0.5 * (times[1] - times[0]) * (values[0] + values[1]);
  const double h = (times.back() - times.front()) / static_cast<double>(intervals);
  double acc = 0.0;
  const std::size_t simpson_end = intervals % 2 == 1 ? intervals - 3 : intervals;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2) {
    acc += h / 3.0 * (values[k] + 4.0 * values[k + 1] + values[k + 2]);
  }
  if (simpson_end != intervals) {
    const std::size_t k = simpson_end;
    acc += 3.0 * h / 8.0 * (values[k] + 3.0 * values[k + 1] + 3.0 * values[k + 2] + values[k + 3]);
  }
  return acc;
}

}  // namespace

double simpson(std::span<const double> times, std::span<const double> values) {
  if (times.size() < 2) return 0.0;
  // uniform prefix gets the composite rule, any irregular tail the trapezoid
  const double h = times[1] - times[0];
  std::size_t uniform = 1;
  while (uniform + 1 < times.size() &&
         std::abs((times[uniform + 1] - times[uniform]) - h) <= 1e-9 * std::abs(h)) {
    ++uniform;
  }
  double acc = composite_simpson(times.subspan(0, uniform + 1), values.subspan(0, uniform + 1));
  for (std::size_t k = uniform; k + 1 < times.size(); ++k) {
    acc += 0.5 * (times[k + 1] - times[k]) * (values[k] + values[k + 1]);
  }
  return acc;
}

}  // namespace vslb

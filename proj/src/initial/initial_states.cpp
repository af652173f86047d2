#include "qwalk/initial_states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "../detail/fft.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/numeric.hpp"

namespace qwalk {
namespace {

using std::numbers::pi;

constexpr std::size_t kGenericGrid = std::size_t{1} << 16;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::int64_t max_radius_for(std::size_t window_cap) {
  return window_cap == 0 ? -1 : static_cast<std::int64_t>((window_cap - 1) / 2);
}

// Scalar amplitudes a(x) on [-radius, radius] for a named case, with the
// truncated mass under the unit Parseval total.
struct ScalarWindow {
  std::int64_t x_min = 0;
  std::vector<Complex> a;
  double truncated_mass = 0.0;
};

std::int64_t tail_radius(const InitialKind& kind, double epsilon, std::int64_t max_radius) {
  CompensatedSum kept;
  kept.add(std::norm(case_amplitude(kind, 0)));
  std::int64_t r = 0;
  while (1.0 - kept.value() > epsilon) {
    ++r;
    if (r > max_radius) {
      throw Error(ErrorCode::ResourceLimit, "tail mass " + num(epsilon) + " needs a radius beyond " +
                                                std::to_string(max_radius));
    }
    kept.add(std::norm(case_amplitude(kind, r)));
    kept.add(std::norm(case_amplitude(kind, -r)));
  }
  return r;
}

ScalarWindow named_window(const InitialSpec& spec, std::size_t window_cap) {
  ScalarWindow w;
  const auto& kind = spec.kind;
  if (std::holds_alternative<kinds::Localized>(kind)) {
    w.a = {1.0};
    return w;
  }
  if (const auto* c5 = std::get_if<kinds::Case5>(&kind)) {
    const auto chi = case5_support(c5->n);
    const auto [lo, hi] = std::minmax_element(chi.begin(), chi.end());
    w.x_min = *lo;
    for (std::int64_t x = *lo; x <= *hi; ++x) w.a.push_back(case_amplitude(kind, x));
    return w;
  }
  const std::int64_t max_radius = max_radius_for(window_cap);
  std::int64_t radius = spec.truncation.radius;
  if (spec.truncation.mode == TruncationPolicy::Mode::TailMass) {
    radius = tail_radius(kind, spec.truncation.epsilon, max_radius);
  } else if (radius > max_radius) {
    throw Error(ErrorCode::ResourceLimit,
                "radius " + std::to_string(radius) + " exceeds window cap " + std::to_string(window_cap));
  }
  w.x_min = -radius;
  w.a.reserve(static_cast<std::size_t>(2 * radius + 1));
  CompensatedSum kept;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    w.a.push_back(case_amplitude(kind, x));
    kept.add(std::norm(w.a.back()));
  }
  w.truncated_mass = std::max(0.0, 1.0 - kept.value());
  return w;
}

// Coefficients (d1 + i d2)/sqrt(W) of a generic state from a uniform k-grid.
ScalarWindow generic_window(const InitialSpec& spec, const kinds::Generic& g,
                            std::size_t window_cap) {
  const bool sampled = g.w1.sampled() && g.w2.sampled();
  std::size_t m = sampled ? g.w1.samples().size() : kGenericGrid;
  if (sampled && g.w2.samples().size() != m) {
    throw Error(ErrorCode::InvalidArgument, "w1 and w2 sample grids differ in size");
  }
  if (!sampled && spec.truncation.mode == TruncationPolicy::Mode::FixedRadius) {
    m = std::max(m, detail::next_power_of_two(4 * static_cast<std::size_t>(spec.truncation.radius) + 4));
  }
  // Callables are sampled half a cell off the grid so that no node sits on
  // the domain edge.
  const double offset = sampled ? 0.0 : 0.5;
  const double dk = 2.0 * pi / static_cast<double>(m);
  std::vector<Complex> f(m);
  double w_total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double k = -pi + (static_cast<double>(i) + offset) * dk;
    const double a = sampled ? g.w1.samples()[i] : g.w1(k);
    const double b = sampled ? g.w2.samples()[i] : g.w2(k);
    f[i] = {a, b};
    w_total += a * a + b * b;
  }
  w_total *= dk;
  if (!(w_total > 0.0) || !std::isfinite(w_total)) {
    throw Error(ErrorCode::NotNormalizable, "W(w1, w2) = " + num(w_total));
  }
  detail::Fft fft(m, detail::Fft::Direction::Backward);
  fft.run(f);
  // d(x) = dk / sqrt(2 pi) * e^{i k_0 x} * sum_m f_m e^{2 pi i m x / M}
  const double scale = dk / std::sqrt(2.0 * pi) / std::sqrt(w_total);
  auto coefficient = [&](std::int64_t x) {
    const std::size_t bin = static_cast<std::size_t>(((x % static_cast<std::int64_t>(m)) +
                                                      static_cast<std::int64_t>(m)) %
                                                     static_cast<std::int64_t>(m));
    const double k0 = -pi + offset * dk;
    return scale * std::polar(1.0, k0 * static_cast<double>(x)) * f[bin];
  };

  const std::int64_t alias_limit = static_cast<std::int64_t>(m / 2) - 1;
  std::int64_t radius = spec.truncation.radius;
  if (spec.truncation.mode == TruncationPolicy::Mode::TailMass) {
    CompensatedSum kept;
    kept.add(std::norm(coefficient(0)));
    radius = 0;
    while (1.0 - kept.value() > spec.truncation.epsilon) {
      if (++radius > alias_limit) {
        throw Error(ErrorCode::ResourceLimit, "generic state needs more than " + std::to_string(m) +
                                                  " k-samples for tail mass " + num(spec.truncation.epsilon));
      }
      kept.add(std::norm(coefficient(radius)));
      kept.add(std::norm(coefficient(-radius)));
    }
  } else if (radius > alias_limit) {
    throw Error(ErrorCode::ResourceLimit, "radius exceeds the k-grid resolution");
  }
  if (radius > max_radius_for(window_cap)) {
    throw Error(ErrorCode::ResourceLimit, "radius exceeds window cap");
  }
  ScalarWindow w;
  w.x_min = -radius;
  CompensatedSum kept;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    w.a.push_back(coefficient(x));
    kept.add(std::norm(w.a.back()));
  }
  w.truncated_mass = std::max(0.0, 1.0 - kept.value());
  return w;
}

}  // namespace

SpinVector SpinVector::make(Complex alpha, Complex beta) {
  const double n = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidSpin, "|alpha|^2 + |beta|^2 = " + num(n) + ", expected 1");
  }
  return {alpha, beta};
}

TruncationPolicy TruncationPolicy::tail_mass(double epsilon, bool renormalize) {
  TruncationPolicy p;
  p.mode = Mode::TailMass;
  p.epsilon = epsilon;
  p.renormalize = renormalize;
  p.validate();
  return p;
}

TruncationPolicy TruncationPolicy::fixed_radius(std::int64_t radius, bool renormalize) {
  TruncationPolicy p;
  p.mode = Mode::FixedRadius;
  p.radius = radius;
  p.renormalize = renormalize;
  p.validate();
  return p;
}

void TruncationPolicy::validate() const {
  if (mode == Mode::TailMass && !(epsilon > 0.0 && epsilon <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "tail-mass epsilon must lie in (0, 1e-2], got " + num(epsilon));
  }
  if (mode == Mode::FixedRadius && radius < 0) {
    throw Error(ErrorCode::InvalidArgument, "truncation radius must be nonnegative");
  }
}

PeriodicFunction::PeriodicFunction(std::function<double(double)> fn) : fn_(std::move(fn)) {}

PeriodicFunction PeriodicFunction::from_samples(std::vector<double> samples) {
  if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two k-samples");
  PeriodicFunction f;
  f.samples_ = std::move(samples);
  return f;
}

double PeriodicFunction::operator()(double k) const {
  if (samples_.empty()) return fn_ ? fn_(k) : 0.0;
  const double m = static_cast<double>(samples_.size());
  double pos = std::fmod((k + pi) / (2.0 * pi) * m, m);
  if (pos < 0) pos += m;
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  const double a = samples_[i % samples_.size()];
  const double b = samples_[(i + 1) % samples_.size()];
  return a + frac * (b - a);
}

PeriodicFunction load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,w", 0) != 0) {
    throw Error(ErrorCode::InvalidArgument, path + ": expected header 'k,w'");
  }
  std::vector<double> ks, ws;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected 'k,w'");
    }
    try {
      ks.push_back(std::stod(line.substr(0, comma)));
      ws.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (ks.size() < 2) throw Error(ErrorCode::InvalidArgument, path + ": need at least two samples");
  const double dk = 2.0 * pi / static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (std::abs(ks[i] - (-pi + dk * static_cast<double>(i))) > 1e-6 * dk + 1e-9) {
      throw Error(ErrorCode::InvalidArgument,
                  path + ": samples must form a uniform grid over [-pi, pi) with the end excluded");
    }
  }
  return PeriodicFunction::from_samples(std::move(ws));
}

WalkState build(const InitialSpec& spec, std::size_t window_cap) {
  spec.truncation.validate();
  const ScalarWindow w = std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kinds::Generic>) {
          return generic_window(spec, k, window_cap);
        } else {
          return named_window(spec, window_cap);
        }
      },
      spec.kind);

  double scale = 1.0;
  if (spec.truncation.renormalize) {
    CompensatedSum total;
    for (const Complex& a : w.a) total.add(std::norm(a));
    if (!(total.value() > 0.0)) throw Error(ErrorCode::NotNormalizable, "initial window carries no mass");
    if (total.value() != 1.0) scale = 1.0 / std::sqrt(total.value());
  }
  std::vector<Spinor> amps(w.a.size());
  for (std::size_t i = 0; i < w.a.size(); ++i) {
    const Complex a = scale == 1.0 ? w.a[i] : w.a[i] * scale;
    amps[i] = {a * spec.phi.alpha, a * spec.phi.beta};
  }
  return WalkState(std::move(amps), -w.x_min, 0, w.truncated_mass);
}

double parseval_check(const WalkState& state) {
  CompensatedSum total;
  for (const Spinor& s : state.amplitudes()) total.add(s.norm2());
  return total.value();
}

}  // namespace qwalk

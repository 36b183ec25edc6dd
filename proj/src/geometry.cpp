#include "qvac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qvac/kernels.hpp"
#include "qvac/units.hpp"

namespace qvac::geom {

using kernels::phi_over_v8;
using units::pi;

namespace {

constexpr double kJanusSmallSwitch = 0.2;  // in wa

quad::IntegralResult exact_zero() { return {0.0, 0.0, 0, true}; }

double hemisphere_slab_volume(double a, double z1, double z2) {
  return pi * (a * a * (z2 - z1) - (z2 * z2 * z2 - z1 * z1 * z1) / 3.0);
}

// Samples pairs from the two half-balls of a Janus ball, with a boundary
// layer of thickness 0.1 a stratified on each side of the equator.
class JanusPairSampler : public quad::PairSampler {
 public:
  explicit JanusPairSampler(double a) : a_(a), layer_(0.1 * a) {}

  int strata() const override { return 4; }

  double volume(int s) const override {
    return slab_volume(s / 2) * slab_volume(s % 2);
  }

  void sample(int s, quad::CounterRng& rng, double* out) const override {
    sample_half(s / 2, false, rng, out);
    sample_half(s % 2, true, rng, out + 3);
  }

 private:
  double slab_volume(int part) const {
    return part == 0 ? hemisphere_slab_volume(a_, 0.0, layer_)
                     : hemisphere_slab_volume(a_, layer_, a_);
  }

  void sample_half(int part, bool lower, quad::CounterRng& rng, double* out) const {
    const double z1 = part == 0 ? 0.0 : layer_;
    const double z2 = part == 0 ? layer_ : a_;
    const double w_max = a_ * a_ - z1 * z1;
    double z;
    do {
      z = z1 + (z2 - z1) * rng.uniform();
    } while ((a_ * a_ - z * z) < w_max * rng.uniform());
    const double rd = std::sqrt(a_ * a_ - z * z) * std::sqrt(rng.uniform());
    const double th = 2.0 * pi * rng.uniform();
    out[0] = rd * std::cos(th);
    out[1] = rd * std::sin(th);
    out[2] = lower ? -z : z;
  }

  double a_;
  double layer_;
};

double kernel_z(const double* pt, double omega) {
  const kernels::Vec3 r{pt[0] - pt[3], pt[1] - pt[4], pt[2] - pt[5]};
  return kernels::grad_im_gamma_product(r, omega)[2];
}

}  // namespace

double volume_a(const Shape& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Needle>) return v.S * v.a;
        else if constexpr (std::is_same_v<T, HemisphereShell>) return 2.0 * pi * v.a * v.a * v.t;
        else if constexpr (std::is_same_v<T, JanusBall>) return 2.0 * pi * v.a * v.a * v.a / 3.0;
        else if constexpr (std::is_same_v<T, PlanarSlab>) return v.S * v.t_A;
        else if constexpr (std::is_same_v<T, AllenWrench>) return 2.0 * v.a * v.S_A;
        else if constexpr (std::is_same_v<T, DualFlags>) return 2.0 * v.a * v.S_A;
        else {
          double w = 0.0;
          for (const auto& p : v.a_points) w += p[3];
          return w;
        }
      },
      s);
}

double volume_b(const Shape& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Needle>) return v.S * v.b;
        else if constexpr (std::is_same_v<T, HemisphereShell>) return 2.0 * pi * v.a * v.a * v.t;
        else if constexpr (std::is_same_v<T, JanusBall>) return 2.0 * pi * v.a * v.a * v.a / 3.0;
        else if constexpr (std::is_same_v<T, PlanarSlab>) return v.S * v.t_B;
        else if constexpr (std::is_same_v<T, AllenWrench>) return 2.0 * v.b * v.S_B;
        else if constexpr (std::is_same_v<T, DualFlags>) return 2.0 * v.b * v.h * v.t;
        else {
          double w = 0.0;
          for (const auto& p : v.b_points) w += p[3];
          return w;
        }
      },
      s);
}

double psi7(double x, const quad::QuadratureSpec& spec) {
  if (x < 0.0) throw std::domain_error("psi7: x must be >= 0");
  if (x == 0.0) return kernels::kPhiMoment7;
  quad::QuadratureSpec s = spec;
  if (x > 3.0) s.oscillation_period = pi;
  const quad::IntegralResult head =
      quad::integrate_1d([](double v) { return v * phi_over_v8(v); }, 0.0, x, s);
  return kernels::kPhiMoment7 - head.value;
}

namespace {

// Delta-z-weighted chordal-distance distribution of hemisphere pairs on the
// unit sphere; integrates to 4 pi^2 over rho in [0, 2].
double shell_pair_weight(double rho, const quad::QuadratureSpec& spec) {
  const double cg = 1.0 - 0.5 * rho * rho;
  const double sg = std::sqrt(std::max(0.0, 1.0 - cg * cg));
  const auto frac_below = [cg, sg](double u) {
    const double denom = std::sqrt(std::max(0.0, 1.0 - u * u)) * sg;
    double c;
    if (denom < 1e-300) {
      c = (u * cg > 0.0) ? 1.0 : -1.0;
    } else {
      c = std::clamp(u * cg / denom, -1.0, 1.0);
    }
    return std::acos(c) / pi;
  };
  quad::QuadratureSpec s = spec.with_rel_tol(std::min(spec.rel_tol, 1e-9));
  const quad::IntegralResult r = quad::integrate_1d(
      [&](double u) { return u * frac_below(u); }, 0.0, 1.0, s);
  return 8.0 * pi * pi * rho * r.value;
}

}  // namespace

double shell_g_full(double x, const quad::QuadratureSpec& spec) {
  const double x8 = std::pow(x, 8);
  quad::QuadratureSpec s = spec;
  if (x > 3.0) s.oscillation_period = pi / x;
  const quad::IntegralResult r = quad::integrate_1d(
      [&](double rho) {
        return shell_pair_weight(rho, spec) * x8 * phi_over_v8(x * rho);
      },
      0.0, 2.0, s);
  return r.value;
}

std::vector<std::array<double, 2>> shell_scaled_integral(
    const std::vector<double>& omega_a, const quad::QuadratureSpec& spec) {
  std::vector<std::array<double, 2>> out;
  out.reserve(omega_a.size());
  for (double x : omega_a) {
    if (x <= 0.0) throw std::domain_error("shell_scaled_integral: omega*a must be > 0");
    const double scaled = 2.0 * shell_g_full(x, spec) / (pi * std::pow(x, 8));
    out.push_back({x, scaled});
  }
  return out;
}

quad::IntegralResult janus_i_mc(double a, double omega,
                                const quad::QuadratureSpec& spec) {
  JanusPairSampler sampler(a);
  const quad::FnN f = [omega](const double* pt) { return kernel_z(pt, omega); };
  return quad::integrate_mc(f, sampler, spec);
}

quad::IntegralResult janus_i_nested(double a, double omega,
                                    const quad::QuadratureSpec& spec) {
  const quad::FnN f = [&](const double* q) {
    const double r = q[0], u = q[1], rp = q[2], up = q[3];
    const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double sup = std::sqrt(std::max(0.0, 1.0 - up * up));
    const auto inner = [&](double psi) {
      const double cosang = u * up + su * sup * std::cos(psi);
      const double rr2 =
          std::max(0.0, r * r + rp * rp - 2.0 * r * rp * cosang);
      const double big_r = std::sqrt(rr2);
      const double dz = r * u - rp * up;
      const double w7 = std::pow(omega, 7);
      const double v = omega * big_r;
      return (1.0 / (16.0 * pi * pi)) * dz * omega * w7 * phi_over_v8(v);
    };
    const quad::IntegralResult in =
        quad::integrate_1d(inner, 0.0, 2.0 * pi, spec.with_rel_tol(spec.rel_tol * 0.1));
    return 2.0 * pi * r * r * rp * rp * in.value;
  };
  const double lo[4] = {0.0, 0.0, 0.0, -1.0};
  const double hi[4] = {a, 1.0, a, 0.0};
  return quad::integrate_nested(f, lo, hi, 4, spec);
}

quad::IntegralResult wrench_j_hat_numeric(const AllenWrench& w, double omega,
                                          const quad::QuadratureSpec& spec) {
  const quad::FnN f = [&](const double* q) {
    const double y = q[0], x = q[1];
    const double dist = std::sqrt(x * x + (w.a + y) * (w.a + y));
    return x * y * phi_over_v8(omega * dist);
  };
  const double lo[2] = {-w.a, 0.0};
  const double hi[2] = {w.a, w.b};
  quad::QuadratureSpec s = spec;
  if (omega * w.a > 3.0) s.oscillation_period = pi / omega;
  quad::IntegralResult r = quad::integrate_nested(f, lo, hi, 2, s);
  const double w4 = std::pow(omega, 4);
  r.value *= w4;
  r.error_estimate *= w4;
  return r;
}

quad::IntegralResult wrench_j_hat(const AllenWrench& w, double omega,
                                  const quad::QuadratureSpec& spec) {
  const double wa = omega * w.a;
  const double wb = omega * w.b;
  if (wa >= 50.0 && wb >= 50.0) {
    const double v = 11.0 * pi * wa / 30.0;
    return {v, std::fabs(v) * 3.0 / wa, 0, true};
  }
  if (wa <= 1e-3 && wb <= 1e-3) {
    const double v = 56.0 * std::pow(wa, 4) * wb * wb / 675.0;
    return {v, std::fabs(v) * 0.5 * wa * wa, 0, true};
  }
  return wrench_j_hat_numeric(w, omega, spec);
}

quad::IntegralResult i_ab(const TwoPartBody& body, double omega,
                          const quad::QuadratureSpec& spec) {
  if (omega <= 0.0) throw std::domain_error("i_ab: omega must be > 0");
  return std::visit(
      [&](const auto& s) -> quad::IntegralResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Needle>) {
          const double vmax = omega * (s.a + s.b);
          quad::QuadratureSpec qs = spec;
          if (vmax > 3.0) qs.oscillation_period = pi;
          quad::IntegralResult r = quad::integrate_1d(
              [&](double v) {
                const double dist = v / omega;
                const double overlap =
                    std::min(std::min(dist, s.a + s.b - dist), std::min(s.a, s.b));
                return overlap * v * phi_over_v8(v);
              },
              0.0, vmax, qs);
          const double scale =
              s.S * s.S / (16.0 * pi * pi) * std::pow(omega, 6);
          r.value *= scale;
          r.error_estimate *= std::fabs(scale);
          return r;
        } else if constexpr (std::is_same_v<T, HemisphereShell>) {
          const double scale = s.t * s.t / (16.0 * pi * pi * s.a * s.a * s.a);
          quad::IntegralResult r{scale * shell_g_full(omega * s.a, spec), 0.0, 0, true};
          r.error_estimate = std::fabs(r.value) * spec.rel_tol * 10.0;
          return r;
        } else if constexpr (std::is_same_v<T, JanusBall>) {
          const double wa = omega * s.a;
          if (wa < kJanusSmallSwitch) {
            const double v = -std::pow(omega, 8) * std::pow(s.a, 7) / 108.0;
            return {v, std::fabs(v) * 0.28 * 4.0 * wa * wa, 0, true};
          }
          return janus_i_mc(s.a, omega, spec);
        } else if constexpr (std::is_same_v<T, PlanarSlab>) {
          const double d = 0.5 * (s.t_A + s.t_B);
          const double v =
              s.S * s.t_B * d * std::pow(omega, 6) / (8.0 * pi) * psi7(omega * d, spec);
          return {v, std::fabs(v) * spec.rel_tol * 10.0, 0, true};
        } else if constexpr (std::is_same_v<T, VoxelCloud>) {
          double sum = 0.0;
          std::int64_t n = 0;
          for (const auto& p : s.a_points)
            for (const auto& q : s.b_points) {
              const kernels::Vec3 r{p[0] - q[0], p[1] - q[1], p[2] - q[2]};
              sum += p[3] * q[3] * kernels::grad_im_gamma_product(r, omega)[2];
              ++n;
            }
          return {sum, std::fabs(sum) * 1e-14 * static_cast<double>(n), n, true};
        } else {
          // wrench and flags lie in the z = 0 plane: the z kernel vanishes
          // pointwise, and the in-plane force cancels by r -> -r symmetry.
          return exact_zero();
        }
      },
      body.shape);
}

std::array<quad::IntegralResult, 3> j_ab(const TwoPartBody& body, double omega,
                                         const quad::QuadratureSpec& spec) {
  if (omega <= 0.0) throw std::domain_error("j_ab: omega must be > 0");
  return std::visit(
      [&](const auto& s) -> std::array<quad::IntegralResult, 3> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AllenWrench>) {
          quad::IntegralResult jh = wrench_j_hat(s, omega, spec);
          const double scale = 2.0 * s.S_A * s.S_B * std::pow(omega, 4);
          jh.value *= scale;
          jh.error_estimate *= scale;
          return {exact_zero(), exact_zero(), jh};
        } else if constexpr (std::is_same_v<T, DualFlags>) {
          const double w8 = std::pow(omega, 8);
          const quad::FnN f = [&](const double* q) {
            const double y = q[0], xp = q[1], yp = q[2];
            const double dist =
                std::sqrt(xp * xp + (y - yp) * (y - yp));
            return y * xp * phi_over_v8(omega * dist);
          };
          const double lo[3] = {-s.a, 0.0, -s.a};
          const double hi[3] = {s.a, s.b, -s.a + s.h};
          quad::IntegralResult r = quad::integrate_nested(f, lo, hi, 3, spec);
          const double scale = 2.0 * s.S_A * s.t * w8;
          r.value *= scale;
          r.error_estimate *= scale;
          return {exact_zero(), exact_zero(), r};
        } else if constexpr (std::is_same_v<T, VoxelCloud>) {
          double jx = 0.0, jy = 0.0, jz = 0.0;
          std::int64_t n = 0;
          const double w8 = std::pow(omega, 8);
          for (const auto& p : s.a_points)
            for (const auto& q : s.b_points) {
              const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
              const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
              const double k = -p[3] * q[3] * w8 * phi_over_v8(omega * dist);
              jx += k * (p[1] * q[2] - p[2] * q[1]);
              jy += k * (p[2] * q[0] - p[0] * q[2]);
              jz += k * (p[0] * q[1] - p[1] * q[0]);
              ++n;
            }
          const double slack = 1e-14 * static_cast<double>(n);
          return {quad::IntegralResult{jx, std::fabs(jx) * slack, n, true},
                  quad::IntegralResult{jy, std::fabs(jy) * slack, n, true},
                  quad::IntegralResult{jz, std::fabs(jz) * slack, n, true}};
        } else {
          // needle (collinear), shell, ball and slab (axisymmetric): r x r'
          // integrates to zero.
          return {exact_zero(), exact_zero(), exact_zero()};
        }
      },
      body.shape);
}

std::array<quad::IntegralResult, 3> wrench_force_vector(
    const AllenWrench& w, double omega, const quad::QuadratureSpec& spec) {
  std::array<quad::IntegralResult, 3> out{exact_zero(), exact_zero(), exact_zero()};
  for (int comp = 0; comp < 2; ++comp) {
    const quad::FnN f = [&](const double* q) {
      const double y = q[0], x = q[1];
      const kernels::Vec3 r1{-x, y + w.a, 0.0};
      const kernels::Vec3 r2{x, y - w.a, 0.0};
      return kernels::grad_im_gamma_product(r1, omega)[comp] +
             kernels::grad_im_gamma_product(r2, omega)[comp];
    };
    const double lo[2] = {-w.a, 0.0};
    const double hi[2] = {w.a, w.b};
    quad::IntegralResult r = quad::integrate_nested(f, lo, hi, 2, spec);
    r.value *= w.S_A * w.S_B;
    r.error_estimate *= w.S_A * w.S_B;
    out[comp] = r;
  }
  return out;
}

double wrench_moment_of_inertia(const AllenWrench& w, double rho_A, double rho_B) {
  if (rho_A <= 0.0 || rho_B <= 0.0)
    throw std::domain_error("wrench_moment_of_inertia: densities must be > 0");
  return rho_A * w.S_A * (2.0 / 3.0) * w.a * w.a * w.a +
         rho_B * w.S_B * 2.0 * w.b * (w.a * w.a + w.b * w.b / 3.0);
}

VoxelCloud load_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_point_cloud: cannot open " + path);
  VoxelCloud cloud;
  double length_scale = 1.0;
  double weight_scale = 1.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# units", 0) == 0) {
      std::string unit = line.substr(7);
      unit.erase(0, unit.find_first_not_of(" \t"));
      if (unit == "nm") {
        length_scale = units::nanometer;
        weight_scale = std::pow(units::nanometer, 3);
      } else if (unit != "natural") {
        throw std::runtime_error("load_point_cloud: unknown units '" + unit + "'");
      }
      continue;
    }
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double x, y, z, wgt;
    std::string tag;
    if (!(row >> x)) continue;
    if (!(row >> y >> z >> wgt >> tag))
      throw std::runtime_error("load_point_cloud: malformed line " +
                               std::to_string(lineno));
    const std::array<double, 4> p{x * length_scale, y * length_scale,
                                  z * length_scale, wgt * weight_scale};
    if (tag == "A" || tag == "a") cloud.a_points.push_back(p);
    else if (tag == "B" || tag == "b") cloud.b_points.push_back(p);
    else
      throw std::runtime_error("load_point_cloud: tag must be A or B at line " +
                               std::to_string(lineno));
  }
  if (cloud.a_points.empty() || cloud.b_points.empty())
    throw std::runtime_error("load_point_cloud: both regions must be non-empty");
  return cloud;
}

VoxelCloud voxelize_needle(const Needle& n, int points_per_part) {
  if (points_per_part < 1)
    throw std::invalid_argument("voxelize_needle: need at least one point");
  VoxelCloud cloud;
  const double dz_a = n.a / points_per_part;
  const double dz_b = n.b / points_per_part;
  for (int i = 0; i < points_per_part; ++i) {
    cloud.a_points.push_back({0.0, 0.0, (i + 0.5) * dz_a, n.S * dz_a});
    cloud.b_points.push_back({0.0, 0.0, -(i + 0.5) * dz_b, n.S * dz_b});
  }
  return cloud;
}

}  // namespace qvac::geom

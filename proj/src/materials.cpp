#include "qvac/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qvac::materials {

Tabulated Tabulated::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("Tabulated::load: cannot open " + path);
  Tabulated t;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double w, re, im;
    if (row >> w >> re >> im) {
      if (!t.omega.empty() && w <= t.omega.back())
        throw std::runtime_error("Tabulated::load: omega grid not strictly increasing");
      if (w <= 0.0) throw std::runtime_error("Tabulated::load: omega must be > 0");
      t.omega.push_back(w);
      t.chi.emplace_back(re, im);
    }
  }
  if (t.omega.size() < 2) throw std::runtime_error("Tabulated::load: need >= 2 rows");
  return t;
}

namespace {

Complex chi_tabulated(const Tabulated& t, double w) {
  if (w < t.omega.front() || w > t.omega.back())
    throw std::out_of_range("chi: omega outside tabulated grid");
  auto it = std::lower_bound(t.omega.begin(), t.omega.end(), w);
  if (it == t.omega.begin()) return t.chi.front();
  const std::size_t hi = static_cast<std::size_t>(it - t.omega.begin());
  const std::size_t lo = hi - 1;
  const double f = (std::log(w) - std::log(t.omega[lo])) /
                   (std::log(t.omega[hi]) - std::log(t.omega[lo]));
  return t.chi[lo] + f * (t.chi[hi] - t.chi[lo]);
}

}  // namespace

Complex chi(const MaterialModel& m, double omega) {
  return std::visit(
      [omega](const auto& v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ConstantDielectric>) {
          return {v.chi, 0.0};
        } else if constexpr (std::is_same_v<T, Drude>) {
          if (omega <= 0.0) throw std::domain_error("chi: Drude requires omega > 0");
          // -wp^2/(w^2 + i w nu) = -wp^2 (w - i nu) / (w (w^2 + nu^2))
          const double d = omega * (omega * omega + v.nu * v.nu);
          return {-v.omega_p * v.omega_p * omega / d, v.omega_p * v.omega_p * v.nu / d};
        } else if constexpr (std::is_same_v<T, BlackbodySurface>) {
          if (v.epsilon_reg <= 0.0)
            throw std::domain_error("chi: BlackbodySurface requires epsilon_reg > 0");
          // (i/4)/(w + i eps) = (eps + i w) / (4 (w^2 + eps^2))
          const double d = 4.0 * (omega * omega + v.epsilon_reg * v.epsilon_reg);
          return {v.epsilon_reg / d, omega / d};
        } else {
          return chi_tabulated(v, omega);
        }
      },
      m);
}

double x_product(const MaterialModel& a, const MaterialModel& b, double omega) {
  return x_product(chi(a, omega), chi(b, omega));
}

double skin_depth(const Drude& m, double omega) {
  if (omega <= 0.0) throw std::domain_error("skin_depth: omega must be > 0");
  return std::sqrt(2.0 * (omega * omega + m.nu * m.nu) /
                   (omega * m.omega_p * m.omega_p * m.nu));
}

double skin_depth(const MaterialModel& m, double omega) {
  const auto* d = std::get_if<Drude>(&m);
  if (!d) throw std::invalid_argument("skin_depth: model is not Drude");
  return skin_depth(*d, omega);
}

Mat3c mean_polarizability(double volume_a, const MaterialModel& a, double volume_b,
                          const MaterialModel& b, double omega) {
  const Complex diag = volume_a * chi(a, omega) + volume_b * chi(b, omega);
  Mat3c out{};
  out[0] = out[4] = out[8] = diag;
  return out;
}

bool is_drude(const MaterialModel& m) { return std::holds_alternative<Drude>(m); }

bool is_lossless(const MaterialModel& m) {
  return std::holds_alternative<ConstantDielectric>(m);
}

}  // namespace qvac::materials

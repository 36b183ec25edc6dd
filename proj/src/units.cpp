#include "qvac/units.hpp"

namespace qvac::units {

double to_natural(double v, Dimension dim) {
  switch (dim) {
    case Dimension::Length: return v * meter;
    case Dimension::Time: return v * second;
    case Dimension::Temperature: return v * kB_eV_per_K;
    case Dimension::Frequency: return v * hbar_eV_s;
    case Dimension::Force: return v / eV2_to_newton;
    case Dimension::Torque: return v / eV_to_newton_meter;
    case Dimension::Mass: return v * kilogram;
    case Dimension::NumberDensity: return v / (meter * meter * meter);
  }
  throw std::invalid_argument("to_natural: unknown dimension tag");
}

double from_natural(double v, Dimension dim) {
  switch (dim) {
    case Dimension::Length: return v / meter;
    case Dimension::Time: return v / second;
    case Dimension::Temperature: return v / kB_eV_per_K;
    case Dimension::Frequency: return v / hbar_eV_s;
    case Dimension::Force: return v * eV2_to_newton;
    case Dimension::Torque: return v * eV_to_newton_meter;
    case Dimension::Mass: return v / kilogram;
    case Dimension::NumberDensity: return v * (meter * meter * meter);
  }
  throw std::invalid_argument("from_natural: unknown dimension tag");
}

double temperature_eV(double kelvin) { return kelvin * kB_eV_per_K; }

double inverse_temperature(double kelvin) {
  if (kelvin <= 0.0) throw std::domain_error("inverse_temperature: T must be > 0");
  return 1.0 / temperature_eV(kelvin);
}

}  // namespace qvac::units

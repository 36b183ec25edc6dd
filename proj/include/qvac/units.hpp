#pragma once

#include <stdexcept>
#include <string>

// Natural units with hbar = c = eps0 = mu0 = kB = 1 and energy measured in eV.
// Lengths and times are eV^-1, temperatures eV, forces eV^2, torques eV,
// masses eV, number densities eV^3.  Velocities are dimensionless (units of c).
namespace qvac::units {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double hbar_c_eV_nm = 197.3269804;       // CODATA
inline constexpr double kB_eV_per_K = 8.617333262e-5;
inline constexpr double hbar_eV_s = 6.582119569e-16;
inline constexpr double c_m_per_s = 299792458.0;
inline constexpr double eV_J = 1.602176634e-19;

// 1 m, 1 s, 1 kg, ... expressed in the natural base.
inline constexpr double meter = 1e9 / hbar_c_eV_nm;        // eV^-1
inline constexpr double nanometer = 1.0 / hbar_c_eV_nm;    // eV^-1
inline constexpr double second = 1.0 / hbar_eV_s;          // eV^-1
inline constexpr double kilogram = 1.0 / 1.78266192e-36;   // eV (E = m c^2)

// Conversion factors natural -> SI.
inline constexpr double eV2_to_newton = eV_J / (hbar_c_eV_nm * 1e-9);  // force
inline constexpr double eV_to_newton_meter = eV_J;                     // torque

// The paper's room-temperature inverse temperature, used as scenario default.
inline constexpr double beta0_eV_inv = 40.0;

enum class Dimension {
  Length,        // SI: m
  Time,          // SI: s
  Temperature,   // SI: K
  Frequency,     // SI: 1/s (angular)
  Force,         // SI: N
  Torque,        // SI: N m
  Mass,          // SI: kg
  NumberDensity, // SI: 1/m^3
};

// SI value -> natural (powers of eV).
double to_natural(double value_si, Dimension dim);
// natural -> SI.
double from_natural(double value_natural, Dimension dim);

double temperature_eV(double kelvin);
double inverse_temperature(double kelvin);  // beta in eV^-1

}  // namespace qvac::units

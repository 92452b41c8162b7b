#pragma once

// Physical constants in the energy units used throughout (meV, s, K, GHz).

namespace nvshelf::constants {

// Planck constant, meV*s; 1 GHz corresponds to h * 1e9 meV.
inline constexpr double h_mev_s = 4.135667696e-12;

// Reduced Planck constant, meV*s.
inline constexpr double hbar_mev_s = 6.582119569e-13;

// Boltzmann constant, meV/K.
inline constexpr double k_B_mev_per_K = 0.08617333;

// Spin-orbit strengths are quoted in GHz; rates use them as energies.
inline constexpr double mev_per_GHz = h_mev_s * 1.0e9;

inline constexpr double pi = 3.14159265358979323846;

} // namespace nvshelf::constants

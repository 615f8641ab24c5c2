#pragma once

// Published reference values and the tolerances they are checked at.
// Single source for the acceptance suite and `incidence reproduce`.
//
// Version history:
//   1  initial set (26 quantities).

#include <array>
#include <cstdint>

namespace incidence::reference {

inline constexpr int version = 1;

// Headline P(N >= 7), GGJ7 scenario, rho = 1. Printed to 5 decimals.
inline constexpr double headline_tail_7 = 0.13690;
inline constexpr double headline_tail_7_tolerance = 5e-6;

// P(N >= 13), GGJ13 scenario, rho = 1. Printed to 5 decimals.
inline constexpr double ggj13_tail_13 = 0.03850;
inline constexpr double ggj13_tail_13_tolerance = 5e-5;

// 203 * 26 / 1734.
inline constexpr double expected_count_ggj7 = 3.04383;
inline constexpr double expected_count_tolerance = 1e-5;

// P(N >= k), k = 1..14, GGJ7 scenario, rho = 1 (bar chart data, 14 digits).
inline constexpr std::array<double, 14> tail_curve_ggj7 = {
    0.75270964061608, 0.56657180307639, 0.42646405827684, 0.32100360804124,
    0.24162251044518, 0.18187159300195, 0.13689650140677, 0.10304331637549,
    0.07756169763688, 0.05838143755383, 0.04394427087979, 0.03307727634106,
    0.02489758478724, 0.01874065209741};
inline constexpr double tail_curve_tolerance = 1e-10;

// Inverse one-sided exact p-values for the JKZ original table with
// 0..8 incidents postulated in other nurses' shifts (printed as integers).
inline constexpr std::array<std::int64_t, 9> inverse_p_jkz_original = {
    9043864, 1137586, 257538, 79497, 29989, 13051, 6329, 3341, 1889};
inline constexpr double inverse_p_relative_tolerance = 1e-3;

// Probability that one of two exponential intensities is at least twice the other.
inline constexpr double rate_ratio_2 = 2.0 / 3.0;
inline constexpr double rate_ratio_tolerance = 0.0;

// Monte Carlo agreement band, in standard errors.
inline constexpr double monte_carlo_sigmas = 4.0;
inline constexpr std::uint64_t monte_carlo_replications = 1'000'000;

} // namespace incidence::reference

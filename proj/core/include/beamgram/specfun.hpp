#pragma once

#include <complex>

namespace beamgram::specfun {

/// Associated Laguerre polynomial L_m^a(x) by upward three-term recurrence.
double laguerre_assoc(int m, int a, double x);

/// d/dx L_m^a(x) = -L_{m-1}^{a+1}(x); zero for m = 0.
double laguerre_assoc_derivative(int m, int a, double x);

/// Largest argument accepted by bessel_j.
inline constexpr double kBesselMaxArgument = 1000.0;

/// Bessel function of the first kind J_l(x) for integer l >= 0 and
/// 0 <= x <= kBesselMaxArgument. Power series below x = 1, Miller backward
/// recurrence normalised by J_0 + 2 sum J_2k = 1 elsewhere.
double bessel_j(int l, double x);

/// Normalisation and phase of the Laguerre-Gaussian mode (m, l).
struct LgConstants {
  int m = 0;
  int l = 0;
  double norm = 0.0;               // C_m^{|l|} = sqrt(m! / (pi (m+|l|)!))
  std::complex<double> phase{1.0};  // [sign l]^l e^{-i pi m} e^{i pi l / 2}
};

/// sign(0) is taken as +1, so (m, 0) has phase (-1)^m. The phase is built
/// from exact quarter-turn values, so it is one of {1, i, -1, -i} bit-exactly.
LgConstants lg_constants(int m, int l);

}  // namespace beamgram::specfun

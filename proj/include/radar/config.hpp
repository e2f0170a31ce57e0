#ifndef RADAR_CONFIG_HPP_
#define RADAR_CONFIG_HPP_

#include <array>
#include <complex>

namespace radar {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Physical and waveform configuration of the colocated MIMO radar.
/// All quantities in SI units (Hz, s, m). Immutable after validate().
struct RadarConfig {
  double fc = 77e9;     // carrier frequency
  double B = 1e8;       // chirp bandwidth
  double Tc = 1e-5;     // pulse duration
  double Tp = 1e-4;     // pulse repetition interval
  double t_sh = 1e-6;   // inter-transmitter waveform time shift
  double Ts = 1e-6;     // sampling period
  int N = 8;            // samples per pulse
  int I = 1;            // candidate transmitters
  int R = 1;            // candidate receivers
  int P = 1;            // candidate pulses per transmitter
  double d = 0.0;       // inter-element spacing; 0 means lambda/2
  double sigma_e = 1.0; // noise std per matched-filter output
  std::array<std::complex<double>, 2> alpha{{{1.0, 0.0}, {1.0, 0.0}}};
  std::array<double, 4> gamma{{1.0, 1.0, 1.0, 1.0}};

  double wavelength() const { return kSpeedOfLight / fc; }
  double chirp_rate() const { return B / Tc; }
  int num_pulse_elements() const { return I * P; }

  /// Fills d = lambda/2 when unset and checks every invariant.
  /// Throws std::invalid_argument on violation.
  void finalize();
  void validate() const;
};

/// Target parameters. Rq only matters for simulation (bulk phase term).
struct TargetParams {
  double u = 0.0;  // direction cosine, |u| <= 1
  double v = 0.0;  // radial velocity, m/s
  double Rq = 0.0; // range, m
};

/// Two-target parameter difference (du, dv). Never both zero on a grid.
struct DeltaTheta {
  double du = 0.0;
  double dv = 0.0;
};

}  // namespace radar

#endif  // RADAR_CONFIG_HPP_

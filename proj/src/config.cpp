#include "radar/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace radar {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("RadarConfig: " + what);
}
}  // namespace

void RadarConfig::finalize() {
  if (d == 0.0) d = wavelength() / 2.0;
  validate();
}

void RadarConfig::validate() const {
  require(fc > 0, "fc must be positive");
  require(B > 0, "B must be positive");
  require(Tc > 0, "Tc must be positive");
  require(Tp > Tc, "Tp must exceed Tc");
  require(Ts > 0, "Ts must be positive");
  require(N >= 1, "N must be at least 1");
  require(N * Ts <= Tp, "N*Ts must not exceed Tp");
  require(Tc + I * t_sh < Tp, "waveform fit condition Tc + I*t_sh < Tp violated");
  require(I >= 1 && R >= 1 && P >= 1, "I, R, P must be at least 1");
  require(d > 0, "d must be positive");
  require(sigma_e > 0, "sigma_e must be positive");
  for (double g : gamma) require(g > 0, "gamma entries must be positive");
}

}  // namespace radar

#ifndef WAVELOS_POWER_HPP
#define WAVELOS_POWER_HPP

#include <cmath>
#include <stdexcept>

// UE transmit-chain power relationship: PA DC consumption vs EIRP. The PA
// RF output combines DC power times PAE with the RF drive in the linear
// (mW) domain; switch loss, antenna gain and back-off apply in dB.

namespace wavelos::power {

struct PaAssumptions {
  double pae_fraction = 0.4;       // power-added efficiency, (0, 1]
  double pa_input_dbm = 0.0;       // RF drive; -inf models negligible drive
  double switch_loss_db = 1.0;
  double antenna_gain_dbi = 0.0;
  double backoff_db = 6.0;

  void validate() const {
    if (!(pae_fraction > 0.0) || pae_fraction > 1.0) {
      throw std::invalid_argument("pae_fraction must lie in (0, 1]");
    }
    if (switch_loss_db < 0.0 || backoff_db < 0.0) {
      throw std::invalid_argument("switch loss and back-off must be >= 0 dB");
    }
  }
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline double eirp_dbm(double pa_dc_mw, const PaAssumptions& a) {
  a.validate();
  if (!(pa_dc_mw > 0.0)) {
    throw std::invalid_argument("pa_dc_mw must be > 0");
  }
  const double drive_mw = std::isinf(a.pa_input_dbm) && a.pa_input_dbm < 0.0
                              ? 0.0
                              : dbm_to_mw(a.pa_input_dbm);
  const double pa_out_mw = pa_dc_mw * a.pae_fraction + drive_mw;
  return mw_to_dbm(pa_out_mw) - a.switch_loss_db + a.antenna_gain_dbi -
         a.backoff_db;
}

/// Exact inverse of eirp_dbm for the same assumptions.
inline double pa_dc_power_mw(double target_eirp_dbm, const PaAssumptions& a) {
  a.validate();
  const double pa_out_dbm = target_eirp_dbm + a.switch_loss_db -
                            a.antenna_gain_dbi + a.backoff_db;
  const double drive_mw = std::isinf(a.pa_input_dbm) && a.pa_input_dbm < 0.0
                              ? 0.0
                              : dbm_to_mw(a.pa_input_dbm);
  const double dc_mw = (dbm_to_mw(pa_out_dbm) - drive_mw) / a.pae_fraction;
  if (!(dc_mw > 0.0)) {
    throw std::invalid_argument(
        "target EIRP is reachable on RF drive alone; implied DC power <= 0");
  }
  return dc_mw;
}

}  // namespace wavelos::power

#endif  // WAVELOS_POWER_HPP

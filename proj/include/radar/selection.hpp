#ifndef RADAR_SELECTION_HPP_
#define RADAR_SELECTION_HPP_

#include <cstdint>
#include <vector>

namespace radar {

/// Ground-set indexing: element ids 0..I*P-1 are transmitter-pulses in
/// row-major (i, p) order, ids I*P..I*P+R-1 are receivers.
struct GroundSet {
  int I = 0, P = 0, R = 0;
  int pulse_count() const { return I * P; }
  int size() const { return I * P + R; }
  int pulse_id(int i, int p) const { return i * P + p; }
  int rx_id(int r) const { return I * P + r; }
  bool is_pulse(int e) const { return e < I * P; }
  int tx_of(int e) const { return e / P; }
  int pulse_of(int e) const { return e % P; }
  int rx_of(int e) const { return e - I * P; }
};

/// Boolean transmitter-pulse / receiver selection with budgets.
struct Selection {
  int I = 0, P = 0, R = 0;
  std::vector<uint8_t> A;  // I*P entries, row-major (i, p)
  std::vector<uint8_t> b;  // R entries
  int K_P = 0;
  int K_R = 0;

  Selection() = default;
  Selection(int I_, int P_, int R_)
      : I(I_), P(P_), R(R_), A(static_cast<size_t>(I_) * P_, 0), b(R_, 0) {}

  static Selection full(int I_, int P_, int R_) {
    Selection s(I_, P_, R_);
    std::fill(s.A.begin(), s.A.end(), uint8_t{1});
    std::fill(s.b.begin(), s.b.end(), uint8_t{1});
    s.K_P = I_ * P_;
    s.K_R = R_;
    return s;
  }

  uint8_t& at(int i, int p) { return A[static_cast<size_t>(i) * P + p]; }
  uint8_t at(int i, int p) const { return A[static_cast<size_t>(i) * P + p]; }

  int pulses_selected() const {
    int c = 0;
    for (uint8_t a : A) c += a;
    return c;
  }
  int receivers_selected() const {
    int c = 0;
    for (uint8_t x : b) c += x;
    return c;
  }
  /// A transmitter counts as selected iff some pulse of it is selected.
  int transmitters_selected() const {
    int c = 0;
    for (int i = 0; i < I; ++i) {
      bool any = false;
      for (int p = 0; p < P; ++p) any = any || at(i, p);
      c += any;
    }
    return c;
  }

  /// Kept ground-set element ids (selected pulses then selected receivers).
  std::vector<int> kept_elements() const {
    std::vector<int> out;
    for (int e = 0; e < I * P; ++e)
      if (A[e]) out.push_back(e);
    for (int r = 0; r < R; ++r)
      if (b[r]) out.push_back(I * P + r);
    return out;
  }
};

/// Complement-side budgets of the selection problem (Algorithm 1 operates
/// on the discarded set).
struct PartitionMatroid {
  int pulse_budget = 0;     // I*P - K_P
  int receiver_budget = 0;  // R - K_R
};

/// True iff |set ∩ pulses| <= pulse_budget and |set ∩ receivers| <= receiver_budget.
bool is_independent(const PartitionMatroid& m, const GroundSet& gs,
                    const std::vector<int>& set);

}  // namespace radar

#endif  // RADAR_SELECTION_HPP_

#pragma once

namespace frachardy {

// (N, s, θ, p) of the Hardy-Rellich family. Validation is explicit: the
// bounded-domain inequality and the whole-space limit admit different sets.
struct FracParams {
  int N = 3;
  double s = 0.5;
  double theta = 0.0;
  double p = 2.0;

  // N ≥ 1, 0 < s < 1, p ≥ 1.
  void check_basic() const;
  // θ ≥ 0 and N > θ + 2s.
  void check_bounded_domain() const;
  // θ > -2s and N > θ + 2s.
  void check_whole_space() const;

  bool operator==(const FracParams&) const = default;
};

}  // namespace frachardy

#pragma once

#include <array>
#include <complex>

namespace qwalk {

/// Real 2x2 coin-flip unitary
///
///   U = [[ cos t,  (-1)^xi sin t ],
///        [ sin t, -(-1)^xi cos t ]]
///
/// with xi in {0,1} and t in [0, 2pi) minus {pi/2, pi, 3pi/2}.
class CoinOperator {
 public:
  /// Throws DegenerateTheta for excluded angles, OutOfRange otherwise.
  static CoinOperator make(int xi, double theta);

  int xi() const noexcept { return xi_; }
  double theta() const noexcept { return theta_; }
  double c() const noexcept { return c_; }
  double s() const noexcept { return s_; }
  /// (-1)^xi
  double sign() const noexcept { return xi_ == 0 ? 1.0 : -1.0; }

  double u00() const noexcept { return c_; }
  double u01() const noexcept { return sign() * s_; }
  double u10() const noexcept { return s_; }
  double u11() const noexcept { return -sign() * c_; }

  /// Row-major complex entries (u00, u01, u10, u11).
  std::array<std::complex<double>, 4> entries() const;
  std::complex<double> determinant() const;

 private:
  CoinOperator(int xi, double theta);

  int xi_;
  double theta_;
  double c_;
  double s_;
};

CoinOperator make_coin(int xi, double theta);

inline constexpr double kThetaExclusionTolerance = 1e-12;

}  // namespace qwalk

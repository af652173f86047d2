#include "qwalk/coin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {
namespace {

std::string describe(int xi, double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "xi=" << xi << ", theta=" << theta;
  return os.str();
}

}  // namespace

CoinOperator::CoinOperator(int xi, double theta)
    : xi_(xi), theta_(theta), c_(std::cos(theta)), s_(std::sin(theta)) {}

CoinOperator CoinOperator::make(int xi, double theta) {
  using std::numbers::pi;
  if (xi != 0 && xi != 1) {
    throw Error(ErrorCode::OutOfRange, "xi must be 0 or 1 (" + describe(xi, theta) + ")");
  }
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 2.0 * pi) {
    throw Error(ErrorCode::OutOfRange, "theta must lie in [0, 2pi) (" + describe(xi, theta) + ")");
  }
  for (double excluded : {pi / 2, pi, 3 * pi / 2}) {
    if (std::abs(theta - excluded) <= kThetaExclusionTolerance) {
      throw Error(ErrorCode::DegenerateTheta,
                  "theta must avoid pi/2, pi, 3pi/2 (" + describe(xi, theta) + ")");
    }
  }
  return CoinOperator(xi, theta);
}

std::array<std::complex<double>, 4> CoinOperator::entries() const {
  return {u00(), u01(), u10(), u11()};
}

std::complex<double> CoinOperator::determinant() const {
  return u00() * u11() - u01() * u10();
}

CoinOperator make_coin(int xi, double theta) { return CoinOperator::make(xi, theta); }

}  // namespace qwalk

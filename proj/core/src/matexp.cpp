#include "swsym/matexp.hpp"

#include <cmath>

namespace swsym {

Eigen::MatrixXd expm(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  Eigen::MatrixXd a = m / std::ldexp(1.0, squarings);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    double tn = term.cwiseAbs().maxCoeff();
    if (tn == 0.0 || tn < 1e-16 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace swsym

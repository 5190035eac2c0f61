#pragma once

#include <Eigen/Dense>

namespace swsym {

/// Dense matrix exponential by scaling and squaring with a truncated Taylor
/// series. Sized for the small (<= 10x10) adjoint matrices of this library;
/// the series is summed until the term norm drops below 1e-16 * ||exp||, so
/// nilpotent inputs terminate exactly and the rotation blocks are resolved to
/// machine precision.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

}  // namespace swsym

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace speccomm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;  // community labels, 1-based

}  // namespace speccomm

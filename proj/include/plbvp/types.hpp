#pragma once

#include <Eigen/Core>

namespace plbvp {

using Scalar = double;
using Index = Eigen::Index;

// Dense 1-D containers for grids, profiles and coefficient lists.
using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

}  // namespace plbvp

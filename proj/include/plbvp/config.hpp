#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plbvp/nonlinearity.hpp"
#include "plbvp/plaplacian.hpp"
#include "plbvp/types.hpp"

namespace plbvp {

struct Tolerances {
  Scalar quad_rel_tol = 1e-10;
  Scalar rk_tol = 1e-10;
  Scalar profile_tol = 1e-10;
};

// Problem description parsed from the flat key = value config format:
//
//   p      = 3
//   gamma  = 4
//   coeffs = [0, -8, 14, -7, 1]      # ascending degree
//   u_max  = 16                      # optional, defaults to 4 * gamma
//
//   [tolerances]                     # optional
//   quad_rel_tol = 1e-10
//   rk_tol       = 1e-10
//   profile_tol  = 1e-10
//
// Unknown keys are rejected.
struct ProblemConfig {
  Scalar p = 2;
  std::vector<Scalar> coeffs;
  Scalar gamma = 1;
  std::optional<Scalar> u_max;
  Tolerances tolerances;

  Scalar u_max_or_default() const { return u_max ? *u_max : 4 * gamma; }
  Exponent exponent() const { return Exponent(p); }
  PolyNonlinearity nonlinearity() const;
};

ProblemConfig parse_config(const std::string& text);
std::string serialize_config(const ProblemConfig& cfg);
ProblemConfig load_config(const std::string& path);

}  // namespace plbvp

#pragma once

#include <string>
#include <vector>

#include "plbvp/diagnostics.hpp"
#include "plbvp/nonlinearity.hpp"
#include "plbvp/timemap.hpp"

namespace plbvp {

// 17-significant-digit decimal rendering (lossless double round trip);
// non-finite values render as "nan"/"inf"/"-inf".
std::string format_number(Scalar v);

// Minimal JSON emitter for the flat report objects; numbers use
// format_number and NaN maps to null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(Scalar v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& null_value();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  const std::string& str() const { return out_; }

 private:
  void separate();

  std::string out_;
  bool need_comma_ = false;
};

std::string to_json(const HypothesisReport& rep);
std::string to_json(const InvariantReport& rep);
std::string diagnosis_json(const Diagnosis& d);
std::string solve_summary_json(const Profile& profile, Scalar b, bool has_b);

// Columns: alpha, lambda, dlambda_dalpha, uprime_at_1, w_at_1, admissible,
// reason; footer metadata rows carry alpha_star and lambda0 when present.
std::string curve_csv(const Curve& curve);

// Columns: x, u, uprime, m.
std::string profile_csv(const Profile& profile);

// 800x600 polyline chart of the solution curve, lambda horizontal and
// u(0) vertical.
std::string curve_svg(const Curve& curve);

}  // namespace plbvp

#include "plbvp/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace plbvp {

std::string format_number(Scalar v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (need_comma_) out_ += ",";
  need_comma_ = false;
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += "{";
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  separate();
  out_ += "\"" + name + "\":";
  return *this;
}

JsonWriter& JsonWriter::value(Scalar v) {
  separate();
  out_ += std::isfinite(v) ? format_number(v) : "null";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  out_ += "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += "\"";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  separate();
  out_ += "null";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += "[";
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  need_comma_ = true;
  return *this;
}

std::string to_json(const HypothesisReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("h41_ok").value(rep.h41_ok);
  w.key("h4a_ok").value(rep.h4a_ok);
  w.key("h42_ok").value(rep.h42_ok);
  w.key("u_max").value(rep.u_max);
  w.key("witnesses").begin_array();
  for (const auto& wit : rep.witnesses) {
    w.begin_object();
    w.key("condition").value(wit.condition);
    w.key("u").value(wit.u);
    w.key("margin").value(wit.margin);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string to_json(const InvariantReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("alpha").value(rep.alpha);
  w.key("lambda").value(rep.lambda);
  w.key("x0").value(rep.x0);
  w.key("energy_drift").value(rep.energy_drift);
  w.key("q_at_x0").value(rep.q_at_x0);
  w.key("z_at_x0").value(rep.z_at_x0);
  w.key("ineq_3_7_ok").value(rep.ineq_3_7_ok);
  w.key("G_at_x0").value(rep.G_at_x0);
  w.key("G_identity_residual").value(rep.G_identity_residual);
  w.key("T_identity_residual").value(rep.T_identity_residual);
  w.key("wronskian_spread").value(rep.wronskian_spread);
  w.key("wronskian_endpoint_residual").value(rep.wronskian_endpoint_residual);
  w.key("u_dprime_at_x0").value(rep.u_dprime_at_x0);
  w.key("w_at_1").value(rep.w_at_1);
  w.key("positive_up_to_x0").value(rep.positive_up_to_x0);
  w.key("verdict_nonsingular").value(rep.verdict_nonsingular);
  w.key("origin_exclusion").value(rep.origin_exclusion);
  w.end_object();
  return w.str() + "\n";
}

std::string diagnosis_json(const Diagnosis& d) {
  JsonWriter w;
  w.begin_object();
  w.key("alpha").value(d.point.alpha);
  w.key("lambda").value(d.point.lambda);
  w.key("dlambda_dalpha").value(d.point.dlambda_dalpha);
  w.key("uprime_at_1").value(d.point.uprime_at_1);
  w.key("w_at_1").value(d.point.w_at_1);
  w.key("verdict_nonsingular").value(d.verdict_nonsingular);
  w.end_object();
  return w.str() + "\n";
}

std::string solve_summary_json(const Profile& profile, Scalar b, bool has_b) {
  JsonWriter w;
  w.begin_object();
  w.key("lambda").value(profile.lambda);
  if (profile.x0)
    w.key("x0").value(*profile.x0);
  else
    w.key("x0").null_value();
  if (has_b)
    w.key("b").value(b);
  else
    w.key("b").null_value();
  w.end_object();
  return w.str() + "\n";
}

std::string curve_csv(const Curve& curve) {
  std::string out = "alpha,lambda,dlambda_dalpha,uprime_at_1,w_at_1,admissible,reason\n";

  struct Row {
    Scalar alpha;
    bool admissible;
    const CurvePoint* pt;
    const RejectedAmplitude* rej;
  };
  std::vector<Row> rows;
  for (const auto& pt : curve.points) rows.push_back({pt.alpha, true, &pt, nullptr});
  for (const auto& rej : curve.rejected)
    rows.push_back({rej.alpha, false, nullptr, &rej});
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.alpha < b.alpha; });

  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  for (const auto& row : rows) {
    out += format_number(row.alpha) + ",";
    out += format_number(row.admissible ? row.pt->lambda : nan) + ",";
    out += format_number(row.admissible ? row.pt->dlambda_dalpha : nan) + ",";
    out += format_number(row.admissible ? row.pt->uprime_at_1 : nan) + ",";
    out += format_number(row.admissible ? row.pt->w_at_1 : nan) + ",";
    out += row.admissible ? "1" : "0";
    out += ",\"" + (row.admissible ? std::string() : row.rej->reason) + "\"\n";
  }

  if (curve.alpha_star)
    out += "# alpha_star," + format_number(*curve.alpha_star) + "\n";
  if (curve.lambda0) out += "# lambda0," + format_number(*curve.lambda0) + "\n";
  return out;
}

std::string profile_csv(const Profile& profile) {
  std::string out = "x,u,uprime,m\n";
  for (Index i = 0; i < profile.x.size(); ++i) {
    out += format_number(profile.x[i]) + "," + format_number(profile.u[i]) +
           "," + format_number(profile.uprime[i]) + "," +
           format_number(profile.m[i]) + "\n";
  }
  return out;
}

namespace {

std::string pixel(Scalar v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string curve_svg(const Curve& curve) {
  const Scalar width = 800, height = 600;
  const Scalar left = 70, right = 20, top = 20, bottom = 50;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  if (curve.points.empty()) {
    out += "<text x=\"400\" y=\"300\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">no admissible points</text>\n";
    out += "</svg>\n";
    return out;
  }

  Scalar lam_min = std::numeric_limits<Scalar>::infinity(), lam_max = -lam_min;
  Scalar a_min = lam_min, a_max = lam_max;
  for (const auto& pt : curve.points) {
    lam_min = std::min(lam_min, pt.lambda);
    lam_max = std::max(lam_max, pt.lambda);
    a_min = std::min(a_min, pt.alpha);
    a_max = std::max(a_max, pt.alpha);
  }
  const Scalar lam_pad = std::max(Scalar(0.05) * (lam_max - lam_min), Scalar(1e-12));
  const Scalar a_pad = std::max(Scalar(0.05) * (a_max - a_min), Scalar(1e-12));
  lam_min -= lam_pad;
  lam_max += lam_pad;
  a_min -= a_pad;
  a_max += a_pad;

  auto px = [&](Scalar lam) {
    return left + (lam - lam_min) / (lam_max - lam_min) * (width - left - right);
  };
  auto py = [&](Scalar a) {
    return height - bottom -
           (a - a_min) / (a_max - a_min) * (height - top - bottom);
  };

  // axes
  out += "<line x1=\"" + pixel(left) + "\" y1=\"" + pixel(height - bottom) +
         "\" x2=\"" + pixel(width - right) + "\" y2=\"" +
         pixel(height - bottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + pixel(left) + "\" y1=\"" + pixel(top) + "\" x2=\"" +
         pixel(left) + "\" y2=\"" + pixel(height - bottom) +
         "\" stroke=\"black\"/>\n";

  char label[64];
  for (int i = 0; i <= 4; ++i) {
    const Scalar lam = lam_min + (lam_max - lam_min) * Scalar(i) / 4;
    const Scalar a = a_min + (a_max - a_min) * Scalar(i) / 4;
    const Scalar x = px(lam), y = py(a);
    out += "<line x1=\"" + pixel(x) + "\" y1=\"" + pixel(height - bottom) +
           "\" x2=\"" + pixel(x) + "\" y2=\"" + pixel(height - bottom + 5) +
           "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.4g", lam);
    out += "<text x=\"" + pixel(x) + "\" y=\"" + pixel(height - bottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + label + "</text>\n";
    out += "<line x1=\"" + pixel(left - 5) + "\" y1=\"" + pixel(y) +
           "\" x2=\"" + pixel(left) + "\" y2=\"" + pixel(y) +
           "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.4g", a);
    out += "<text x=\"" + pixel(left - 8) + "\" y=\"" + pixel(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + label + "</text>\n";
  }
  out += "<text x=\"" + pixel((left + width - right) / 2) + "\" y=\"" +
         pixel(height - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">lambda</text>\n";
  out += "<text x=\"18\" y=\"" + pixel((top + height - bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         pixel((top + height - bottom) / 2) + ")\">u(0)</text>\n";

  out += "<polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"";
  for (const auto& pt : curve.points)
    out += pixel(px(pt.lambda)) + "," + pixel(py(pt.alpha)) + " ";
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace plbvp

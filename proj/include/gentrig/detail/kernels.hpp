// SPDX-License-Identifier: Apache-2.0
//
// Defining integrands of the four inverse-function families and their
// partial derivatives in p and t.  Everything is written so that values
// stay accurate when t approaches 1 (the (0,1)-domain families) or grows
// large (the half-line families): 1 - t^p goes through expm1/log1p and
// large powers stay in log space until the final exp.
#pragma once

#include <cmath>

namespace gentrig::detail {

// log(1 + e^w) without overflow.
inline double log1p_exp(double w) {
  return w > 36.0 ? w + std::exp(-w) : std::log1p(std::exp(w));
}

// A point of (0,1) carrying its exact distance to the upper endpoint.
// Near t = 1 the distance is the only usable representation; kernels never
// recompute 1 - t from t.
struct UnitPoint {
  double t;
  double dist;
};

inline UnitPoint unit_point(double t) { return {t, 1.0 - t}; }
inline UnitPoint unit_point_from_dist(double v) { return {1.0 - v, v}; }

// Shared quantities for t in (0,1).
struct UnitPow {
  double log_t;      // log t
  double tp;         // t^p
  double omtp;       // 1 - t^p
  double log_omtp;   // log(1 - t^p)
};

inline UnitPow unit_pow(double p, const UnitPoint& pt) {
  UnitPow u;
  u.log_t = (pt.t >= 0.5) ? std::log1p(-pt.dist) : std::log(pt.t);
  const double w = p * u.log_t;
  u.tp = std::exp(w);
  u.omtp = -std::expm1(w);
  u.log_omtp = (u.tp <= 0.5) ? std::log1p(-u.tp) : std::log(u.omtp);
  return u;
}

// ---------------------------------------------------------------------------
// sin family: weight (1 - t^p)^(-1/p) on (0,1)
// ---------------------------------------------------------------------------

inline double sin_weight(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 1.0;
  const UnitPow u = unit_pow(p, pt);
  return std::exp(-u.log_omtp / p);
}

// (d/dp weight) / weight, the log-derivative eta of the weight
inline double sin_ratio_dp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return u.log_omtp / (p * p) + u.tp * u.log_t / (p * u.omtp);
}

inline double sin_weight_dp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  return sin_weight(p, pt) * sin_ratio_dp(p, pt);
}

inline double sin_weight_dpp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  const double w = std::exp(-u.log_omtp / p);
  const double dw = w * (u.log_omtp / (p * p) + u.tp * u.log_t / (p * u.omtp));
  return dw * dw / w - (2.0 / p) * dw +
         w * u.tp * u.log_t * u.log_t / (p * u.omtp * u.omtp);
}

// (d/dt weight) / weight = t^(p-1) / (1 - t^p)
inline double sin_ratio_dx(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return u.tp / (pt.t * u.omtp);
}

inline double sin_weight_dx(double p, const UnitPoint& pt) {
  return sin_weight(p, pt) * sin_ratio_dx(p, pt);
}

inline double sin_recip_weight(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 1.0;
  const UnitPow u = unit_pow(p, pt);
  return std::exp(u.log_omtp / p);
}

// ---------------------------------------------------------------------------
// tan family: weight 1/(1 + t^p) on (0, inf)
// ---------------------------------------------------------------------------

inline double tan_weight(double p, double t) {
  if (t <= 0.0) return 1.0;
  return std::exp(-log1p_exp(p * std::log(t)));
}

inline double tan_ratio_dp(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double w = p * lt;
  return -lt * std::exp(w - log1p_exp(w));
}

inline double tan_weight_dp(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double w = p * lt;
  return -lt * std::exp(w - 2.0 * log1p_exp(w));
}

inline double tan_weight_dpp(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double w = p * lt;
  const double l = log1p_exp(w);
  return lt * lt * (std::exp(2.0 * w - 3.0 * l) - std::exp(w - 3.0 * l));
}

inline double tan_ratio_dx(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double w = p * std::log(t);
  return -(p / t) * std::exp(w - log1p_exp(w));
}

inline double tan_weight_dx(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double w = p * std::log(t);
  return -(p / t) * std::exp(w - 2.0 * log1p_exp(w));
}

inline double tan_recip_weight(double p, double t) {
  if (t <= 0.0) return 1.0;
  return std::exp(log1p_exp(p * std::log(t)));
}

// ---------------------------------------------------------------------------
// sinh family: weight (1 + t^p)^(-1/p) on (0, inf)
// ---------------------------------------------------------------------------

inline double sinh_weight(double p, double t) {
  if (t <= 0.0) return 1.0;
  return std::exp(-log1p_exp(p * std::log(t)) / p);
}

inline double sinh_ratio_dp(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double w = p * lt;
  const double l = log1p_exp(w);
  return l / (p * p) - lt * std::exp(w - l) / p;
}

inline double sinh_weight_dp(double p, double t) {
  if (t <= 0.0) return 0.0;
  return sinh_weight(p, t) * sinh_ratio_dp(p, t);
}

inline double sinh_weight_dpp(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double lt = std::log(t);
  const double w = p * lt;
  const double l = log1p_exp(w);
  const double lam = std::exp(-l / p);
  const double dlam = lam * (l / (p * p) - lt * std::exp(w - l) / p);
  return dlam * dlam / lam - (2.0 / p) * dlam -
         lam * lt * lt * std::exp(w - 2.0 * l) / p;
}

inline double sinh_ratio_dx(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double w = p * std::log(t);
  return -(1.0 / t) * std::exp(w - log1p_exp(w));
}

inline double sinh_weight_dx(double p, double t) {
  if (t <= 0.0) return 0.0;
  const double w = p * std::log(t);
  const double l = log1p_exp(w);
  return -(1.0 / t) * std::exp(w - (1.0 + 1.0 / p) * l);
}

inline double sinh_recip_weight(double p, double t) {
  if (t <= 0.0) return 1.0;
  return std::exp(log1p_exp(p * std::log(t)) / p);
}

// ---------------------------------------------------------------------------
// tanh family: weight 1/(1 - t^p) on (0,1)
// ---------------------------------------------------------------------------
// Near t = 1 the bare derivatives overflow long before the assembled
// assembled derivative identities do, so everything is built from the balanced ratios
// t^p/(1-t^p) and log(t)/(1-t^p).

inline double tanh_weight(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 1.0;
  return 1.0 / unit_pow(p, pt).omtp;
}

inline double tanh_ratio_dp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return u.tp * u.log_t / u.omtp;
}

inline double tanh_weight_dp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return (u.tp / u.omtp) * (u.log_t / u.omtp);
}

inline double tanh_weight_dpp(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  const double r = u.log_t / u.omtp;
  return (u.tp * (u.tp + 1.0) / u.omtp) * r * r;
}

inline double tanh_ratio_dx(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return p * u.tp / (pt.t * u.omtp);
}

inline double tanh_weight_dx(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 0.0;
  const UnitPow u = unit_pow(p, pt);
  return (p * u.tp / pt.t) / (u.omtp * u.omtp);
}

inline double tanh_recip_weight(double p, const UnitPoint& pt) {
  if (pt.t <= 0.0) return 1.0;
  return unit_pow(p, pt).omtp;
}

}  // namespace gentrig::detail

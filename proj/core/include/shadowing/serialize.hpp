#pragma once

#include "shadowing/constants.hpp"
#include "shadowing/shadow.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace shadowing {

using Json = nlohmann::ordered_json;

template <class D, class Fmt>
Json derived_json(const Derived<D>& d, Fmt fmt) {
  return Json{{"value", fmt(d.value)}, {"provenance", to_string(d.provenance)}, {"derivation", d.derivation}};
}

/// Exact values as text plus a decimal approximation for each distance.
template <DynamicalSystem S>
Json constants_json(const S& sys, const CertifiedConstants<typename S::Distance>& c) {
  auto exact = [](const typename S::Distance& d) { return S::format_distance(d); };
  auto with_approx = [&](const Derived<typename S::Distance>& d) {
    Json j = derived_json(d, exact);
    j["approx"] = S::approx(d.value);
    return j;
  };
  Json checks = Json::array();
  for (const auto& s : c.checks) checks.push_back(s);
  return Json{{"system", sys.name()},
              {"epsilon", with_approx(c.epsilon)},
              {"alpha", with_approx(c.alpha)},
              {"delta", with_approx(c.delta)},
              {"N", derived_json(c.N, [](std::int64_t v) { return v; })},
              {"rho", with_approx(c.rho)},
              {"one_jump_threshold", exact(c.one_jump_threshold)},
              {"checks", checks}};
}

template <DynamicalSystem S>
Json tail_json(const TailEvidence<typename S::Distance>& t) {
  Json j{{"side", to_string(t.side)}, {"reason", t.reason}};
  j["sup"] = t.sup ? Json(S::format_distance(*t.sup)) : Json(nullptr);
  j["escape_index"] = t.escape_index ? Json(*t.escape_index) : Json(nullptr);
  return j;
}

template <DynamicalSystem S>
Json certificate_json(const ShadowCertificate<S>& cert) {
  const S& sys = cert.target.system();
  auto fmt = [](const typename S::Distance& d) { return S::format_distance(d); };
  Json trace = Json::array();
  for (const auto& step : cert.trace) {
    Json s{{"depth", step.depth}, {"jumps", step.target_jumps}, {"conditions", step.conditions}};
    if (step.base_case) {
      s["shadow_sup"] = fmt(step.shadow_sup);
    } else {
      s["reindex_shift"] = step.reindex_shift;
      s["sub_target_jumps"] = step.sub_target_jumps;
      s["segment_deviation"] = fmt(step.segment_deviation);
      s["eta_sup"] = fmt(step.eta_sup);
      s["zeta_sup"] = fmt(step.zeta_sup);
      s["overlap_gap"] = fmt(step.overlap_gap);
      s["centre_gap"] = fmt(step.centre_gap);
      s["tau_sup"] = fmt(step.tau_sup);
      s["final_sup"] = fmt(step.final_sup);
    }
    trace.push_back(std::move(s));
  }
  Json j{{"method", cert.method},
         {"shadow_point", sys.format_point(cert.shadow_point)},
         {"target", to_text(cert.target)},
         {"epsilon_claimed", fmt(cert.epsilon_claimed)},
         {"window", {cert.window.lo, cert.window.hi}},
         {"window_sup_error", fmt(cert.window_sup_error)},
         {"window_argmax", cert.window_argmax},
         {"error_at_zero", fmt(cert.error_at_zero)},
         {"tails", {tail_json<S>(cert.left_tail), tail_json<S>(cert.right_tail)}},
         {"trace", trace}};
  if (!cert.error_table.empty()) {
    Json table = Json::array();
    for (const auto& d : cert.error_table) table.push_back(fmt(d));
    j["error_table"] = std::move(table);
  }
  return j;
}

}  // namespace shadowing

#include "qlp/scores.hpp"

#include <cmath>
#include <stdexcept>

#include "qlp/baselines.hpp"
#include "qlp/evolution.hpp"

namespace qlp {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::qlp_even: return "qlp-even";
    case Method::qlp_odd: return "qlp-odd";
    case Method::ra_l2: return "ra-l2";
    case Method::ch_l2: return "ch-l2";
    case Method::l3: return "l3";
    case Method::ch_l3: return "ch-l3";
    case Method::lo: return "lo";
  }
  return "?";
}

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Method parse_method(std::string_view name) {
  for (Method m : {Method::qlp_even, Method::qlp_odd, Method::ra_l2, Method::ch_l2, Method::l3,
                   Method::ch_l3, Method::lo}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool is_qlp(Method m) { return m == Method::qlp_even || m == Method::qlp_odd; }

bool has_parameter(Method m) { return is_qlp(m) || m == Method::lo; }

void MethodSpec::validate() const {
  if (is_qlp(method) && !std::isfinite(time)) throw std::invalid_argument("walk time must be finite");
  if (method == Method::lo && !(alpha > 0.0 && std::isfinite(alpha))) {
    throw std::invalid_argument("LO requires alpha > 0");
  }
}

double MethodSpec::parameter() const {
  if (is_qlp(method)) return time;
  if (method == Method::lo) return alpha;
  return 0.0;
}

MethodSpec MethodSpec::with_parameter(double value) const {
  MethodSpec copy = *this;
  if (is_qlp(method)) copy.time = value;
  if (method == Method::lo) copy.alpha = value;
  return copy;
}

ScoreMatrix score(const Graph& g, const MethodSpec& spec) {
  spec.validate();
  switch (spec.method) {
    case Method::qlp_even: return qlp_score(g, spec.time, Parity::even);
    case Method::qlp_odd: return qlp_score(g, spec.time, Parity::odd);
    case Method::ra_l2: return ra_l2(g);
    case Method::ch_l2: return ch_l2(g);
    case Method::l3: return l3(g);
    case Method::ch_l3: return ch_l3(g);
    case Method::lo: return lo(g, spec.alpha);
  }
  throw std::logic_error("unhandled method");
}

}  // namespace qlp

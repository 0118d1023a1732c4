#pragma once

#include <string>
#include <string_view>

#include "qlp/linalg.hpp"

namespace qlp {

enum class Method { qlp_even, qlp_odd, ra_l2, ch_l2, l3, ch_l3, lo };

enum class Parity { even, odd };

std::string_view to_string(Method m);
std::string_view to_string(Parity p);
/// Accepts the CLI spellings: qlp-even, qlp-odd, ra-l2, ch-l2, l3, ch-l3, lo.
Method parse_method(std::string_view name);

bool is_qlp(Method m);
/// True for methods with a tunable scalar (walk time t or regularizer alpha).
bool has_parameter(Method m);

struct MethodSpec {
  Method method = Method::qlp_odd;
  double time = 1.0;     // QLP walk time t
  double alpha = 1e-2;   // LO regularizer

  /// Throws std::invalid_argument when alpha <= 0 for LO or t is not finite.
  void validate() const;
  /// Value of the method's tunable parameter (t or alpha); 0 when it has none.
  double parameter() const;
  MethodSpec with_parameter(double value) const;
};

/// Symmetric per-pair score table. The diagonal and entries for existing
/// edges are computed like any other entry; ranking drops them.
struct ScoreMatrix {
  MethodSpec spec;
  Matrix values;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
  double operator()(NodeId i, NodeId j) const { return values(i, j); }
};

/// Runs the scorer named by spec on g.
ScoreMatrix score(const Graph& g, const MethodSpec& spec);

}  // namespace qlp

#pragma once

#include <vector>

#include "qlp/scores.hpp"

namespace qlp {

/// Eigendecomposition of a graph's adjacency, reusable across walk times.
struct Spectrum {
  SymmetricEigen eig;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eig.eigenvalues.size()); }
};

Spectrum decompose(const Graph& g);

/// U(t) = exp(-iAt) split into real and imaginary parts.
///
/// With A = V diag(lambda) V^T:
///   re = V cos(lambda t) V^T,  im = -V sin(lambda t) V^T.
/// Both parts are symmetrized after assembly so entries agree bit-for-bit
/// across the diagonal.
struct EvolutionOperator {
  double time = 0.0;
  Matrix re_part;
  Matrix im_part;

  std::size_t size() const noexcept { return static_cast<std::size_t>(re_part.rows()); }
};

EvolutionOperator evolution_operator(const Graph& g, double t);
EvolutionOperator evolution_operator(const Spectrum& spectrum, double t);

/// One part of U(t): the real part for even, the imaginary part for odd.
Matrix evolution_part(const Spectrum& spectrum, double t, Parity parity);

struct QlpScores {
  ScoreMatrix even;
  ScoreMatrix odd;
};

/// even p_ij = Re(U)_ij^2, odd p_ij = Im(U)_ij^2.
QlpScores qlp_scores(const EvolutionOperator& u);
QlpScores qlp_scores(const Graph& g, double t);

/// Single-parity QLP scores; skips assembling the unused half of U(t).
ScoreMatrix qlp_score(const Graph& g, double t, Parity parity);
ScoreMatrix qlp_score(const Spectrum& spectrum, double t, Parity parity);

/// Taylor coefficients of cos/sin split of exp(-iAt):
///   c_even[k] = (-1)^k t^(2k) / (2k)!
///   c_odd[k]  = (-1)^(k+1) t^(2k+1) / (2k+1)!
struct SeriesTruncation {
  int order = 0;
  double time = 0.0;
  std::vector<double> c_even;
  std::vector<double> c_odd;

  /// Throws std::invalid_argument for order < 1.
  static SeriesTruncation make(double t, int order);
};

/// QLP scores from the first `order` even and odd series terms, built with
/// explicit adjacency powers. Independent of the eigendecomposition route;
/// meant for small graphs and small t * ||A||.
QlpScores truncated_series_scores(const Graph& g, double t, int order);

}  // namespace qlp

#include "qlp/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace qlp {

Spectrum decompose(const Graph& g) { return Spectrum{symmetric_eigen(adjacency_dense(g))}; }

namespace {

// V diag(f(lambda)) V^T
Matrix spectral_function(const Spectrum& s, const Vector& diag) {
  const Matrix& v = s.eig.eigenvectors;
  Matrix scaled = v * diag.asDiagonal();
  Matrix out = scaled * v.transpose();
  symmetrize(out);
  return out;
}

ScoreMatrix squared(Matrix part, Method method, double t) {
  part = part.array().square().matrix();
  ScoreMatrix s;
  s.spec.method = method;
  s.spec.time = t;
  s.values = std::move(part);
  return s;
}

}  // namespace

Matrix evolution_part(const Spectrum& spectrum, double t, Parity parity) {
  if (!std::isfinite(t)) throw std::invalid_argument("walk time must be finite");
  const Vector& lambda = spectrum.eig.eigenvalues;
  if (parity == Parity::even) {
    return spectral_function(spectrum, (lambda * t).array().cos().matrix());
  }
  return spectral_function(spectrum, -(lambda * t).array().sin().matrix());
}

EvolutionOperator evolution_operator(const Spectrum& spectrum, double t) {
  EvolutionOperator u;
  u.time = t;
  u.re_part = evolution_part(spectrum, t, Parity::even);
  u.im_part = evolution_part(spectrum, t, Parity::odd);
  return u;
}

EvolutionOperator evolution_operator(const Graph& g, double t) {
  return evolution_operator(decompose(g), t);
}

QlpScores qlp_scores(const EvolutionOperator& u) {
  return {squared(u.re_part, Method::qlp_even, u.time), squared(u.im_part, Method::qlp_odd, u.time)};
}

QlpScores qlp_scores(const Graph& g, double t) { return qlp_scores(evolution_operator(g, t)); }

ScoreMatrix qlp_score(const Spectrum& spectrum, double t, Parity parity) {
  return squared(evolution_part(spectrum, t, parity),
                 parity == Parity::even ? Method::qlp_even : Method::qlp_odd, t);
}

ScoreMatrix qlp_score(const Graph& g, double t, Parity parity) {
  return qlp_score(decompose(g), t, parity);
}

SeriesTruncation SeriesTruncation::make(double t, int order) {
  if (order < 1) throw std::invalid_argument("series order must be >= 1");
  SeriesTruncation s;
  s.order = order;
  s.time = t;
  s.c_even.resize(static_cast<std::size_t>(order));
  s.c_odd.resize(static_cast<std::size_t>(order));
  // running term t^n / n!, built incrementally to avoid factorial overflow
  double term = 1.0;
  for (int n = 0; n < 2 * order; ++n) {
    if (n > 0) term *= t / n;
    const int k = n / 2;
    if (n % 2 == 0) {
      s.c_even[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      s.c_odd[static_cast<std::size_t>(k)] = (k % 2 == 0 ? -1.0 : 1.0) * term;
    }
  }
  return s;
}

QlpScores truncated_series_scores(const Graph& g, double t, int order) {
  const SeriesTruncation series = SeriesTruncation::make(t, order);
  const Matrix a = adjacency_dense(g);
  const Matrix a2 = a * a;
  const auto n = a.rows();

  Matrix even_sum = Matrix::Zero(n, n);
  Matrix odd_sum = Matrix::Zero(n, n);
  Matrix even_power = Matrix::Identity(n, n);  // A^(2k)
  for (int k = 0; k < order; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    even_sum += series.c_even[idx] * even_power;
    odd_sum += series.c_odd[idx] * (a * even_power);
    if (k + 1 < order) even_power = even_power * a2;
  }

  QlpScores out;
  out.even.spec.method = Method::qlp_even;
  out.even.spec.time = t;
  out.even.values = even_sum.array().square().matrix();
  out.odd.spec.method = Method::qlp_odd;
  out.odd.spec.time = t;
  out.odd.values = odd_sum.array().square().matrix();
  return out;
}

}  // namespace qlp

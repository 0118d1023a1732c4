#include "qlp/report_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <openssl/evp.h>

namespace qlp {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

ojson curve_json(std::span<const double> xs) { return ojson(std::vector<double>(xs.begin(), xs.end())); }

}  // namespace

ojson to_json(const NetworkStats& s) {
  return ojson{{"N", s.node_count},
               {"M", s.edge_count},
               {"k_av", s.mean_degree},
               {"k_max", s.max_degree},
               {"density", s.density},
               {"d_max", s.diameter},
               {"d_av", s.mean_distance},
               {"C", s.clustering},
               {"degree_moments", {{"k2", s.degree_moment2}, {"k3", s.degree_moment3}}},
               {"largest_component_size", s.largest_component_size}};
}

ojson to_json(const MethodSpec& spec) {
  ojson j{{"method", std::string(to_string(spec.method))}};
  if (is_qlp(spec.method)) j["t"] = spec.time;
  if (spec.method == Method::lo) j["alpha"] = spec.alpha;
  return j;
}

ojson to_json(const TuningResult& t) {
  ojson points = ojson::array();
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    points.push_back({{"parameter", t.grid[i]}, {"objective", t.values[i]}});
  }
  return ojson{{"method", std::string(to_string(t.base.method))},
               {"objective", std::string(to_string(t.objective))},
               {"holdout_edges", t.holdout_edges},
               {"cutoff", t.cutoff},
               {"best", t.best},
               {"grid", points}};
}

ojson to_json(const EvalReport& r) {
  ojson folds = ojson::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"fold", f.fold},
                     {"test_edges", f.test_edges},
                     {"auc_roc", f.auc.roc},
                     {"auc_pr", f.auc.pr},
                     {"precision", curve_json(f.precision)}});
  }
  ojson j{{"spec", to_json(r.spec)},
          {"folds", r.fold_count},
          {"seed", r.seed},
          {"cutoff", r.cutoff},
          {"fold_plan_digest", r.plan_digest},
          {"auc_roc_mean", r.auc_roc_mean},
          {"auc_roc_std", r.auc_roc_std},
          {"auc_pr_mean", r.auc_pr_mean},
          {"auc_pr_std", r.auc_pr_std},
          {"precision_mean", curve_json(r.precision_mean)},
          {"precision_std", curve_json(r.precision_std)},
          {"per_fold", folds}};
  j["tuning"] = r.tuning ? to_json(*r.tuning) : ojson(nullptr);
  return j;
}

ojson to_json(const HeldoutResult& r) {
  ojson j{{"spec", to_json(r.spec)},
          {"top_n", r.precision.size()},
          {"test_edges_used", r.test_edges_used},
          {"test_edges_dropped", r.test_edges_dropped},
          {"test_edges_in_train", r.test_edges_in_train},
          {"precision", curve_json(r.precision)}};
  j["tuning"] = r.tuning ? to_json(*r.tuning) : ojson(nullptr);
  return j;
}

void write_ranked_csv(std::ostream& out, const Graph& g, const RankedPredictions& ranked) {
  out << "node_i,node_j,score\n";
  for (const auto& p : ranked.entries) {
    out << csv_field(g.label(p.i)) << ',' << csv_field(g.label(p.j)) << ',' << format_double(p.score) << '\n';
  }
}

void write_samples_csv(std::ostream& out, const Graph& g, std::span<const SampleRecord> samples) {
  out << "initial_node,ancilla,measured_node,disposition\n";
  for (const auto& s : samples) {
    out << csv_field(g.label(s.initial_node)) << ',' << static_cast<int>(s.ancilla) << ','
        << csv_field(g.label(s.measured_node)) << ',' << to_string(s.disposition) << '\n';
  }
}

void write_precision_csv(std::ostream& out, std::span<const double> mean, std::span<const double> std) {
  out << "rank,mean,std\n";
  for (std::size_t r = 0; r < mean.size(); ++r) {
    out << r << ',' << format_double(mean[r]) << ',' << format_double(r < std.size() ? std[r] : 0.0) << '\n';
  }
}

void write_auc_csv(std::ostream& out, const EvalReport& r) {
  out << "fold,auc_roc,auc_pr\n";
  for (const auto& f : r.folds) {
    out << f.fold << ',' << format_double(f.auc.roc) << ',' << format_double(f.auc.pr) << '\n';
  }
  out << "mean," << format_double(r.auc_roc_mean) << ',' << format_double(r.auc_pr_mean) << '\n';
  out << "std," << format_double(r.auc_roc_std) << ',' << format_double(r.auc_pr_std) << '\n';
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 init failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace qlp

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "qlp/eval.hpp"
#include "qlp/graph.hpp"
#include "qlp/sampler.hpp"

namespace qlp {

/// Shortest round-trip decimal form, locale independent ('.' separator).
std::string format_double(double x);

nlohmann::ordered_json to_json(const NetworkStats& s);
nlohmann::ordered_json to_json(const MethodSpec& spec);
nlohmann::ordered_json to_json(const TuningResult& t);
nlohmann::ordered_json to_json(const EvalReport& r);
nlohmann::ordered_json to_json(const HeldoutResult& r);

/// node_i,node_j,score with original labels.
void write_ranked_csv(std::ostream& out, const Graph& g, const RankedPredictions& ranked);
/// initial_node,ancilla,measured_node,disposition
void write_samples_csv(std::ostream& out, const Graph& g, std::span<const SampleRecord> samples);
/// rank,mean,std
void write_precision_csv(std::ostream& out, std::span<const double> mean, std::span<const double> std);
/// fold,auc_roc,auc_pr followed by mean and std rows
void write_auc_csv(std::ostream& out, const EvalReport& r);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes text with LF endings; throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qlp

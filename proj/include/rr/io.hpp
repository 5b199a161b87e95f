#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rr/analysis.hpp"

namespace rr {

// Instance file: {"n": int, "m": int, "utilities": [[...], ...]}; row i holds
// agent i+1's utilities in item-id order. Utilities must be exact integers.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json instance_to_json(const Instance& inst);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

// Allocation file: {"bundles": [[items], ...], "trace": [[round, agent, item], ...]}
// with the trace optional.
Allocation allocation_from_json(const nlohmann::json& j);
nlohmann::ordered_json allocation_to_json(const Allocation& alloc);
Allocation load_allocation(const std::filesystem::path& path);

// Noise config file: {"rho": float, "delta": float, "adversary": str, "seed": uint64}.
NoiseConfig noise_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json noise_config_to_json(const NoiseConfig& cfg);
NoiseConfig load_noise_config(const std::filesystem::path& path);

// RunReport as printed by the CLI. Wall time is emitted only on request so
// that identical flags and seed reproduce byte-identical output.
nlohmann::ordered_json report_to_json(const RunReport& report, bool include_timing = false);

// Sweep / Monte Carlo CSV contract (also used for single mc rows).
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

// Per-trial transcript CSV row.
std::string transcript_csv_header();
std::string transcript_csv_row(const std::string& algorithm, int n, int m, double rho,
                               double delta, std::uint64_t seed,
                               const QueryTranscript& transcript, bool success);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rr

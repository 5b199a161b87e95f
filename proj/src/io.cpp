#include "rr/io.hpp"

#include <cinttypes>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rr {

namespace {

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorCode::ParseError, "invalid JSON in " + what);
    return j;
}

long long int_field(const nlohmann::json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::MalformedInstance,
             what + " needs an integer field '" + std::string(key) + "'");
    return j[key].get<long long>();
}

std::string format(const char* fmt, ...) {
    char buf[128];
    va_list args;
    va_start(args, fmt);
    vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad()) fail(ErrorCode::IoError, "failed reading '" + path.string() + "'");
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) fail(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

Instance instance_from_json(const nlohmann::json& j) {
    Instance inst;
    inst.n = static_cast<int>(int_field(j, "n", "instance"));
    inst.m = static_cast<int>(int_field(j, "m", "instance"));
    if (!j.contains("utilities") || !j["utilities"].is_array())
        fail(ErrorCode::MalformedInstance, "instance needs a 'utilities' array");
    for (const auto& row : j["utilities"]) {
        if (!row.is_array())
            fail(ErrorCode::MalformedInstance, "utility rows must be arrays");
        std::vector<Utility> values;
        values.reserve(row.size());
        for (const auto& v : row) {
            if (!v.is_number_integer())
                fail(ErrorCode::MalformedInstance,
                     "utilities must be exact integers (floating point breaks strict preferences)");
            values.push_back(v.get<long long>());
        }
        inst.utilities.push_back(std::move(values));
    }
    validate_instance(inst);
    return inst;
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json j;
    j["n"] = inst.n;
    j["m"] = inst.m;
    j["utilities"] = inst.utilities;
    return j;
}

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_json(parse_json(read_text_file(path), "instance file '" + path.string() + "'"));
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    write_text_file(path, instance_to_json(inst).dump() + "\n");
}

Allocation allocation_from_json(const nlohmann::json& j) {
    Allocation alloc;
    if (!j.contains("bundles") || !j["bundles"].is_array())
        fail(ErrorCode::MalformedAllocation, "allocation needs a 'bundles' array");
    for (const auto& bundle : j["bundles"]) {
        if (!bundle.is_array())
            fail(ErrorCode::MalformedAllocation, "bundles must be arrays of item ids");
        std::vector<Item> items;
        for (const auto& v : bundle) {
            if (!v.is_number_integer())
                fail(ErrorCode::MalformedAllocation, "item ids must be integers");
            items.push_back(v.get<int>());
        }
        std::sort(items.begin(), items.end());
        alloc.bundles.push_back(std::move(items));
    }
    if (j.contains("trace")) {
        if (!j["trace"].is_array())
            fail(ErrorCode::MalformedAllocation, "trace must be an array");
        for (const auto& ev : j["trace"]) {
            if (!ev.is_array() || ev.size() != 3 || !ev[0].is_number_integer() ||
                !ev[1].is_number_integer() || !ev[2].is_number_integer())
                fail(ErrorCode::MalformedAllocation,
                     "trace events must be [round, agent, item] integer triples");
            alloc.trace.push_back({ev[0].get<int>(), ev[1].get<int>(), ev[2].get<int>()});
        }
    }
    return alloc;
}

nlohmann::ordered_json allocation_to_json(const Allocation& alloc) {
    nlohmann::ordered_json j;
    j["bundles"] = alloc.bundles;
    auto trace = nlohmann::ordered_json::array();
    for (const PickEvent& ev : alloc.trace)
        trace.push_back({ev.round, ev.agent, ev.item});
    j["trace"] = std::move(trace);
    return j;
}

Allocation load_allocation(const std::filesystem::path& path) {
    return allocation_from_json(parse_json(read_text_file(path), "allocation file '" + path.string() + "'"));
}

NoiseConfig noise_config_from_json(const nlohmann::json& j) {
    NoiseConfig cfg;
    if (!j.contains("rho") || !j["rho"].is_number())
        fail(ErrorCode::BadNoiseLevel, "noise config needs a numeric 'rho'");
    if (!j.contains("delta") || !j["delta"].is_number())
        fail(ErrorCode::BadFailureBudget, "noise config needs a numeric 'delta'");
    if (!j.contains("adversary") || !j["adversary"].is_string())
        fail(ErrorCode::BadAdversary, "noise config needs a string 'adversary'");
    if (!j.contains("seed") || !j["seed"].is_number_integer())
        fail(ErrorCode::BadParameter, "noise config needs an integer 'seed'");
    cfg.rho = j["rho"].get<double>();
    cfg.delta = j["delta"].get<double>();
    cfg.adversary = adversary_from_name(j["adversary"].get<std::string>());
    cfg.seed = j["seed"].get<std::uint64_t>();
    validate_noise_config(cfg);
    return cfg;
}

nlohmann::ordered_json noise_config_to_json(const NoiseConfig& cfg) {
    nlohmann::ordered_json j;
    j["rho"] = cfg.rho;
    j["delta"] = cfg.delta;
    j["adversary"] = adversary_name(cfg.adversary);
    j["seed"] = cfg.seed;
    return j;
}

NoiseConfig load_noise_config(const std::filesystem::path& path) {
    return noise_config_from_json(parse_json(read_text_file(path), "noise config '" + path.string() + "'"));
}

nlohmann::ordered_json report_to_json(const RunReport& report, bool include_timing) {
    nlohmann::ordered_json j;
    j["algorithm"] = report.algorithm;
    j["seed"] = report.seed;
    j["allocation"] = allocation_to_json(report.allocation);
    nlohmann::ordered_json transcript;
    transcript["comparisons"] = report.transcript.comparison_count;
    transcript["values"] = report.transcript.value_count;
    auto per_agent = nlohmann::ordered_json::array();
    for (const AgentCounts& counts : report.transcript.per_agent)
        per_agent.push_back({counts.comparisons, counts.values});
    transcript["per_agent"] = std::move(per_agent);
    j["transcript"] = std::move(transcript);
    if (report.matches_reference.has_value()) j["success"] = *report.matches_reference;
    if (include_timing) j["elapsed_seconds"] = report.elapsed_seconds;
    return j;
}

std::string sweep_csv_header() {
    return "allocator,n,m,rho,delta,trials,mean_comparisons,mean_values,"
           "norm_nmlog_m_over_n,norm_nm_plus_mlogm,norm_nmlogm,norm_m2,success_rate\n";
}

std::string sweep_csv_row(const SweepRow& row) {
    return row.allocator + format(",%d,%d,%.6g,%.6g,%lld,", row.n, row.m, row.rho, row.delta,
                                  row.trials) +
           format("%.6f,%.6f,", row.mean_comparisons, row.mean_values) +
           format("%.6f,%.6f,%.6f,%.6f,%.6f\n", row.norm_nmlog_m_over_n,
                  row.norm_nm_plus_mlogm, row.norm_nmlogm, row.norm_m2, row.success_rate);
}

std::string transcript_csv_header() {
    return "algorithm,n,m,rho,delta,seed,comparison_count,value_count,success\n";
}

std::string transcript_csv_row(const std::string& algorithm, int n, int m, double rho,
                               double delta, std::uint64_t seed,
                               const QueryTranscript& transcript, bool success) {
    return algorithm + format(",%d,%d,%.6g,%.6g,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%d\n", n,
                              m, rho, delta, seed, transcript.comparison_count,
                              transcript.value_count, success ? 1 : 0);
}

}  // namespace rr

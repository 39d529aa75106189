// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ecobench/errors.hpp"

namespace ecobench {

// One flow-level observation: traffic shape, resource utilization and the
// co-recorded sustainability fields, plus the 0/1 anomaly label.
struct FlowRecord {
    std::int64_t packet_count = 0;
    std::int64_t byte_count = 0; // bytes
    double flow_duration = 0.0;  // seconds
    std::string protocol_type;
    int src_port = 0;
    int dst_port = 0;
    double avg_pkt_size = 0.0;    // bytes
    double payload_entropy = 0.0; // bits/byte, in [0, 8]
    std::string connection_state;
    double cpu_util = 0.0; // percent, [0, 100]
    double mem_util = 0.0;
    double disk_io_util = 0.0;
    double net_io_util = 0.0;
    std::int64_t vm_count = 1;
    double power_consumption_watts = 0.0;
    double carbon_emission_gco2eq = 0.0;
    double energy_cost_usd = 0.0;
    double pue = 1.0; // >= 1
    int status = 0;   // 0 normal, 1 anomaly

    // Derived feature columns; recomputing from base fields is the
    // definition, so they are always bit-exact.
    double bytes_per_packet() const {
        return packet_count == 0 ? 0.0
                                 : static_cast<double>(byte_count) / static_cast<double>(packet_count);
    }
    double payload_entropy_x_size() const { return payload_entropy * avg_pkt_size; }
    double resource_util_sum() const { return cpu_util + mem_util + disk_io_util + net_io_util; }
    double power_per_vm() const {
        return vm_count == 0 ? 0.0 : power_consumption_watts / static_cast<double>(vm_count);
    }

    bool operator==(const FlowRecord&) const = default;
};

// external header name -> canonical column name
using ColumnMapping = std::map<std::string, std::string>;

struct Dataset {
    std::vector<FlowRecord> records;
    std::string source; // file path or "synthetic:..."
    ColumnMapping column_mapping;
    bool engineered = false; // true once the four derived columns joined the feature view

    std::size_t size() const { return records.size(); }
    bool operator==(const Dataset&) const = default;
};

enum class ValidatePolicy { kReject, kClamp, kDropRow };

ValidatePolicy parse_policy(std::string_view name); // "reject" | "clamp" | "drop-row"
std::string_view policy_name(ValidatePolicy p);

struct ValidationReport {
    ValidatePolicy policy = ValidatePolicy::kReject;
    std::map<std::string, std::size_t> violations_by_rule; // rule name -> count
    std::vector<std::size_t> violating_rows;               // input row indices, ascending
    std::size_t rows_in = 0;
    std::size_t rows_out = 0;
    std::size_t rows_dropped = 0;

    std::size_t total_violations() const;
    std::string to_string() const;
};

// Thrown by validate() under the reject policy; carries the full report.
struct ValidationError : DataError {
    ValidationError(const std::string& msg, ValidationReport r)
        : DataError(msg), report(std::move(r)) {}
    ValidationReport report;
};

// Canonical column order of the external CSV format.
const std::vector<std::string>& canonical_columns();

// Numeric columns in schema order; includes the four engineered columns when
// ds.engineered is set. `status` is last.
std::vector<std::string> numeric_columns(const Dataset& ds);
std::vector<double> column_values(const Dataset& ds, std::string_view name);

// Loads a CSV with a header of canonical (or mapped) column names. Every
// canonical column must resolve; unknown extra columns are ignored. Cell
// parse failures are collected and reported together.
Dataset load_csv(const std::filesystem::path& path, const ColumnMapping& mapping = {});

// Writes the canonical CSV form; finite numeric fields round-trip bit-exactly.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

// Applies the schema invariants under the given policy. kReject throws
// ValidationError on the first pass if anything is off; kClamp pulls values
// to the nearest legal bound; kDropRow removes offending rows.
std::pair<Dataset, ValidationReport> validate(const Dataset& ds, ValidatePolicy policy);

struct SyntheticSpec {
    std::size_t n = 2300;
    double anomaly_fraction = 0.25; // (0, 1)
    double signal_strength = 1.0;   // anomaly shift in units of field stddev
    std::uint64_t seed = 0;
};

// Schema-compatible synthetic traffic. Anomalies combine an upward shift of
// the power/carbon/utilization fields (scaled by signal_strength) with a
// two-corner entropy-vs-packet-size signature that no single linear boundary
// separates. Identical specs produce byte-identical datasets.
Dataset generate_synthetic(const SyntheticSpec& spec);

} // namespace ecobench

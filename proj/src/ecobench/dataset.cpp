// SPDX-License-Identifier: Apache-2.0
#include "ecobench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <variant>

#include "ecobench/csv.hpp"
#include "ecobench/numio.hpp"
#include "ecobench/rng.hpp"

namespace ecobench {

namespace {

using FieldPtr = std::variant<std::int64_t FlowRecord::*, int FlowRecord::*, double FlowRecord::*,
                              std::string FlowRecord::*>;

struct FieldDef {
    const char* name;
    FieldPtr member;
};

const std::vector<FieldDef>& schema() {
    static const std::vector<FieldDef> defs = {
        {"packet_count", &FlowRecord::packet_count},
        {"byte_count", &FlowRecord::byte_count},
        {"flow_duration", &FlowRecord::flow_duration},
        {"protocol_type", &FlowRecord::protocol_type},
        {"src_port", &FlowRecord::src_port},
        {"dst_port", &FlowRecord::dst_port},
        {"avg_pkt_size", &FlowRecord::avg_pkt_size},
        {"payload_entropy", &FlowRecord::payload_entropy},
        {"connection_state", &FlowRecord::connection_state},
        {"cpu_util", &FlowRecord::cpu_util},
        {"mem_util", &FlowRecord::mem_util},
        {"disk_io_util", &FlowRecord::disk_io_util},
        {"net_io_util", &FlowRecord::net_io_util},
        {"vm_count", &FlowRecord::vm_count},
        {"power_consumption_watts", &FlowRecord::power_consumption_watts},
        {"carbon_emission_gCO2eq", &FlowRecord::carbon_emission_gco2eq},
        {"energy_cost_usd", &FlowRecord::energy_cost_usd},
        {"pue", &FlowRecord::pue},
        {"status", &FlowRecord::status},
    };
    return defs;
}

bool parse_cell(FlowRecord& rec, const FieldDef& def, const std::string& cell) {
    return std::visit(
        [&](auto member) {
            using T = std::remove_reference_t<decltype(rec.*member)>;
            if constexpr (std::is_same_v<T, std::string>) {
                rec.*member = cell;
                return true;
            } else if constexpr (std::is_same_v<T, double>) {
                auto v = parse_double(cell);
                if (!v)
                    return false;
                rec.*member = *v;
                return true;
            } else {
                auto v = parse_int(cell);
                if (!v || *v < std::numeric_limits<T>::min() || *v > std::numeric_limits<T>::max())
                    return false;
                rec.*member = static_cast<T>(*v);
                return true;
            }
        },
        def.member);
}

std::string format_cell(const FlowRecord& rec, const FieldDef& def) {
    return std::visit(
        [&](auto member) -> std::string {
            using T = std::remove_reference_t<decltype(rec.*member)>;
            if constexpr (std::is_same_v<T, std::string>)
                return rec.*member;
            else if constexpr (std::is_same_v<T, double>)
                return format_double(rec.*member);
            else
                return std::to_string(rec.*member);
        },
        def.member);
}

// One schema invariant: check, and pull into range for the clamp policy.
struct Rule {
    std::string name;
    std::function<bool(const FlowRecord&)> ok;
    std::function<void(FlowRecord&)> clamp;
};

void clamp_double(double& v, double lo, double hi) {
    if (!(v >= lo)) // catches NaN as well
        v = lo;
    else if (v > hi)
        v = hi;
}

const std::vector<Rule>& rules() {
    static const auto bounded = [](double FlowRecord::* f, double lo, double hi) {
        return Rule{"", [f, lo, hi](const FlowRecord& r) { return r.*f >= lo && r.*f <= hi; },
                    [f, lo, hi](FlowRecord& r) { clamp_double(r.*f, lo, hi); }};
    };
    static const double kInf = std::numeric_limits<double>::max();
    static const std::vector<Rule> list = [] {
        std::vector<Rule> v;
        auto add = [&v](std::string name, Rule r) {
            r.name = std::move(name);
            v.push_back(std::move(r));
        };
        add("packet_count>=0", {"", [](const FlowRecord& r) { return r.packet_count >= 0; },
                                [](FlowRecord& r) { r.packet_count = std::max<std::int64_t>(r.packet_count, 0); }});
        add("byte_count>=0", {"", [](const FlowRecord& r) { return r.byte_count >= 0; },
                              [](FlowRecord& r) { r.byte_count = std::max<std::int64_t>(r.byte_count, 0); }});
        add("flow_duration>=0", bounded(&FlowRecord::flow_duration, 0.0, kInf));
        add("src_port in [0,65535]",
            {"", [](const FlowRecord& r) { return r.src_port >= 0 && r.src_port <= 65535; },
             [](FlowRecord& r) { r.src_port = std::clamp(r.src_port, 0, 65535); }});
        add("dst_port in [0,65535]",
            {"", [](const FlowRecord& r) { return r.dst_port >= 0 && r.dst_port <= 65535; },
             [](FlowRecord& r) { r.dst_port = std::clamp(r.dst_port, 0, 65535); }});
        add("avg_pkt_size>=0", bounded(&FlowRecord::avg_pkt_size, 0.0, kInf));
        add("payload_entropy in [0,8]", bounded(&FlowRecord::payload_entropy, 0.0, 8.0));
        add("cpu_util in [0,100]", bounded(&FlowRecord::cpu_util, 0.0, 100.0));
        add("mem_util in [0,100]", bounded(&FlowRecord::mem_util, 0.0, 100.0));
        add("disk_io_util in [0,100]", bounded(&FlowRecord::disk_io_util, 0.0, 100.0));
        add("net_io_util in [0,100]", bounded(&FlowRecord::net_io_util, 0.0, 100.0));
        add("vm_count>=1", {"", [](const FlowRecord& r) { return r.vm_count >= 1; },
                            [](FlowRecord& r) { r.vm_count = std::max<std::int64_t>(r.vm_count, 1); }});
        add("power_consumption_watts>=0", bounded(&FlowRecord::power_consumption_watts, 0.0, kInf));
        add("carbon_emission_gCO2eq>=0", bounded(&FlowRecord::carbon_emission_gco2eq, 0.0, kInf));
        add("energy_cost_usd>=0", bounded(&FlowRecord::energy_cost_usd, 0.0, kInf));
        add("pue>=1", bounded(&FlowRecord::pue, 1.0, kInf));
        add("status in {0,1}", {"", [](const FlowRecord& r) { return r.status == 0 || r.status == 1; },
                                [](FlowRecord& r) { r.status = std::clamp(r.status, 0, 1); }});
        return v;
    }();
    return list;
}

} // namespace

ValidatePolicy parse_policy(std::string_view name) {
    if (name == "reject")
        return ValidatePolicy::kReject;
    if (name == "clamp")
        return ValidatePolicy::kClamp;
    if (name == "drop-row")
        return ValidatePolicy::kDropRow;
    throw UsageError("unknown validate policy: '" + std::string(name) +
                     "' (expected reject|clamp|drop-row)");
}

std::string_view policy_name(ValidatePolicy p) {
    switch (p) {
    case ValidatePolicy::kReject: return "reject";
    case ValidatePolicy::kClamp: return "clamp";
    case ValidatePolicy::kDropRow: return "drop-row";
    }
    return "?";
}

std::size_t ValidationReport::total_violations() const {
    std::size_t n = 0;
    for (const auto& [rule, count] : violations_by_rule)
        n += count;
    return n;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os << "policy=" << policy_name(policy) << " rows_in=" << rows_in << " rows_out=" << rows_out
       << " rows_dropped=" << rows_dropped << " violations=" << total_violations();
    for (const auto& [rule, count] : violations_by_rule)
        os << "\n  " << rule << ": " << count;
    return os.str();
}

const std::vector<std::string>& canonical_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& def : schema())
            v.push_back(def.name);
        return v;
    }();
    return names;
}

std::vector<std::string> numeric_columns(const Dataset& ds) {
    std::vector<std::string> cols;
    for (const auto& def : schema()) {
        if (std::holds_alternative<std::string FlowRecord::*>(def.member))
            continue;
        if (std::string_view(def.name) == "status")
            continue;
        cols.push_back(def.name);
    }
    if (ds.engineered) {
        cols.insert(cols.end(),
                    {"bytes_per_packet", "payload_entropy_x_size", "resource_util_sum", "power_per_vm"});
    }
    cols.push_back("status");
    return cols;
}

std::vector<double> column_values(const Dataset& ds, std::string_view name) {
    std::vector<double> out;
    out.reserve(ds.size());
    if (name == "bytes_per_packet") {
        for (const auto& r : ds.records)
            out.push_back(r.bytes_per_packet());
        return out;
    }
    if (name == "payload_entropy_x_size") {
        for (const auto& r : ds.records)
            out.push_back(r.payload_entropy_x_size());
        return out;
    }
    if (name == "resource_util_sum") {
        for (const auto& r : ds.records)
            out.push_back(r.resource_util_sum());
        return out;
    }
    if (name == "power_per_vm") {
        for (const auto& r : ds.records)
            out.push_back(r.power_per_vm());
        return out;
    }
    for (const auto& def : schema()) {
        if (name != def.name)
            continue;
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(ds.records[0].*member)>;
                if constexpr (std::is_same_v<T, std::string>)
                    throw UsageError("column '" + std::string(name) + "' is not numeric");
                else
                    for (const auto& r : ds.records)
                        out.push_back(static_cast<double>(r.*member));
            },
            def.member);
        return out;
    }
    throw UsageError("unknown column: '" + std::string(name) + "'");
}

Dataset load_csv(const std::filesystem::path& path, const ColumnMapping& mapping) {
    CsvTable t = read_csv_file(path);

    // Resolve each canonical column to a header index, via the mapping when
    // the canonical name itself is absent.
    std::vector<std::size_t> col_index(schema().size());
    for (std::size_t f = 0; f < schema().size(); ++f) {
        const std::string canonical = schema()[f].name;
        std::string wanted = canonical;
        auto direct = std::find(t.header.begin(), t.header.end(), canonical);
        if (direct == t.header.end()) {
            for (const auto& [external, mapped] : mapping)
                if (mapped == canonical) {
                    wanted = external;
                    break;
                }
            direct = std::find(t.header.begin(), t.header.end(), wanted);
        }
        if (direct == t.header.end())
            throw DataError("schema error: missing required column '" + canonical + "' in " +
                            path.string());
        col_index[f] = static_cast<std::size_t>(direct - t.header.begin());
    }

    Dataset ds;
    ds.source = path.string();
    ds.column_mapping = mapping;
    ds.records.reserve(t.rows.size());

    std::vector<std::string> errors;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        FlowRecord rec;
        for (std::size_t f = 0; f < schema().size(); ++f) {
            if (col_index[f] >= row.size()) {
                errors.push_back("row " + std::to_string(r + 1) + ": too few cells");
                break;
            }
            if (!parse_cell(rec, schema()[f], row[col_index[f]]))
                errors.push_back("row " + std::to_string(r + 1) + ", column '" +
                                 schema()[f].name + "': unparseable cell '" + row[col_index[f]] +
                                 "'");
        }
        ds.records.push_back(std::move(rec));
    }
    if (!errors.empty()) {
        std::string msg = "parse error in " + path.string() + " (" +
                          std::to_string(errors.size()) + " cells):";
        for (std::size_t i = 0; i < errors.size() && i < 10; ++i)
            msg += "\n  " + errors[i];
        if (errors.size() > 10)
            msg += "\n  ...";
        throw DataError(msg);
    }
    return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(ds.size());
    for (const auto& rec : ds.records) {
        std::vector<std::string> row;
        row.reserve(schema().size());
        for (const auto& def : schema())
            row.push_back(format_cell(rec, def));
        rows.push_back(std::move(row));
    }
    write_csv_file(path, canonical_columns(), rows);
}

std::pair<Dataset, ValidationReport> validate(const Dataset& ds, ValidatePolicy policy) {
    ValidationReport report;
    report.policy = policy;
    report.rows_in = ds.size();

    Dataset out;
    out.source = ds.source;
    out.column_mapping = ds.column_mapping;
    out.engineered = ds.engineered;
    out.records.reserve(ds.size());

    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        FlowRecord rec = ds.records[i];
        bool bad = false;
        for (const auto& rule : rules()) {
            if (rule.ok(rec))
                continue;
            bad = true;
            ++report.violations_by_rule[rule.name];
            if (policy == ValidatePolicy::kClamp)
                rule.clamp(rec);
        }
        if (bad)
            report.violating_rows.push_back(i);
        if (bad && policy == ValidatePolicy::kDropRow) {
            ++report.rows_dropped;
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    report.rows_out = out.size();

    if (policy == ValidatePolicy::kReject && !report.violating_rows.empty())
        throw ValidationError("validation error: " + std::to_string(report.total_violations()) +
                                  " violations in " + std::to_string(report.violating_rows.size()) +
                                  " rows\n" + report.to_string(),
                              report);
    return {std::move(out), std::move(report)};
}

namespace {

// Field-level generative model. Anomalies overlay two signatures on the
// normal profile: a resource/power shift of `g` standard deviations, and a
// two-corner entropy-vs-size pattern whose corners cancel in the marginals.
FlowRecord synth_record(Rng& rng, bool anomaly, double g) {
    static const int kCommonPorts[] = {80, 443, 53, 22, 25, 110, 143, 8080, 3306, 5432};
    const double gc = std::min(g, 1.0);

    FlowRecord r;
    const double pu = rng.next_unit();
    r.protocol_type = pu < 0.48 ? "UDP" : (pu < 0.82 ? "TCP" : "ICMP");
    const double cu = rng.next_unit();
    r.connection_state = cu < 0.42 ? "FIN" : (cu < 0.70 ? "ESTABLISHED" : (cu < 0.88 ? "SYN" : "RST"));

    double log_pkt = rng.normal(4.0, 1.0);
    double log_size = rng.normal(6.0, 0.45);
    r.flow_duration = std::exp(rng.normal(0.4, 1.0));
    r.payload_entropy = rng.trunc_normal(4.2, 0.9, 0.0, 8.0);

    r.src_port = 1024 + static_cast<int>(rng.below(64512));
    r.dst_port = kCommonPorts[rng.below(std::size(kCommonPorts))];

    r.cpu_util = rng.trunc_normal(35.0, 12.0, 0.0, 100.0);
    r.mem_util = rng.trunc_normal(45.0, 14.0, 0.0, 100.0);
    r.disk_io_util = rng.trunc_normal(25.0, 10.0, 0.0, 100.0);
    r.net_io_util = rng.trunc_normal(30.0, 12.0, 0.0, 100.0);
    r.vm_count = 1 + static_cast<std::int64_t>(rng.below(8));

    double power_noise = rng.normal(0.0, 12.0);
    double carbon_noise = rng.normal(0.0, 0.08);
    double cost_noise = rng.normal(0.0, 0.10);
    r.pue = std::max(1.0, 1.12 + rng.normal(0.0, 0.12));

    if (anomaly) {
        const double spread = 1.0 + 0.3 * gc;
        r.cpu_util = rng.trunc_normal(35.0 + 12.0 * g, 12.0 * spread, 0.0, 100.0);
        r.mem_util = rng.trunc_normal(45.0 + 14.0 * g, 14.0 * spread, 0.0, 100.0);
        r.disk_io_util = rng.trunc_normal(25.0 + 10.0 * g, 10.0 * spread, 0.0, 100.0);
        r.net_io_util = rng.trunc_normal(30.0 + 12.0 * g, 12.0 * spread, 0.0, 100.0);
        power_noise = rng.normal(12.0 * g, 12.0 * (1.0 + 0.4 * gc));
        carbon_noise = rng.normal(0.04 * g, 0.08);

        // Two-corner traffic signature: high entropy with small packets, or
        // low entropy with large slow flows. Corner displacement scales with
        // g so a zero-signal dataset is indistinguishable from normal.
        const double ent_sigma = 0.9 - 0.35 * gc;
        if (rng.next_unit() < 0.5) {
            r.payload_entropy = rng.trunc_normal(4.2 + 1.53 * g, ent_sigma, 0.0, 8.0);
            log_size = rng.normal(6.0 - 0.8 * g, 0.45 - 0.10 * gc);
            log_pkt = rng.normal(4.0 + 0.7 * g, 1.0 - 0.10 * gc);
        } else {
            r.payload_entropy = rng.trunc_normal(4.2 - 1.53 * g, ent_sigma, 0.0, 8.0);
            log_size = rng.normal(6.0 + 0.65 * g, 0.45 - 0.10 * gc);
            r.flow_duration = std::exp(rng.normal(0.4 + 0.9 * g, 1.0 - 0.10 * gc));
        }
        if (rng.next_unit() < 0.5 * gc)
            r.dst_port = 20000 + static_cast<int>(rng.below(45000));
    }

    r.packet_count = std::max<std::int64_t>(1, std::llround(std::exp(log_pkt)));
    r.avg_pkt_size = std::clamp(std::exp(log_size), 64.0, 1500.0);
    r.byte_count = std::max<std::int64_t>(
        r.packet_count,
        std::llround(static_cast<double>(r.packet_count) * r.avg_pkt_size *
                     std::exp(rng.normal(0.0, 0.05))));

    r.power_consumption_watts =
        std::max(0.0, 150.0 + 1.5 * r.cpu_util + 0.8 * r.net_io_util +
                          6.0 * std::log1p(static_cast<double>(r.byte_count)) + power_noise);
    r.carbon_emission_gco2eq = r.power_consumption_watts * 0.45 * std::exp(carbon_noise);
    r.energy_cost_usd = r.power_consumption_watts * 0.0011 * std::exp(cost_noise);
    r.status = anomaly ? 1 : 0;
    return r;
}

} // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n < 10)
        throw UsageError("generate_synthetic: n must be >= 10");
    if (!(spec.anomaly_fraction > 0.0 && spec.anomaly_fraction < 1.0))
        throw UsageError("generate_synthetic: anomaly_fraction must be in (0, 1)");
    if (!(spec.signal_strength >= 0.0))
        throw UsageError("generate_synthetic: signal_strength must be >= 0");

    const auto n_anomalies = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.n) * spec.anomaly_fraction));

    std::vector<int> status(spec.n, 0);
    std::fill(status.begin(), status.begin() + static_cast<std::ptrdiff_t>(n_anomalies), 1);
    Rng label_rng(key_of({spec.seed, 0x5a17u}));
    label_rng.shuffle(status);

    Dataset ds;
    ds.records.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        Rng rec_rng(key_of({spec.seed, 0xda7au, i}));
        ds.records.push_back(synth_record(rec_rng, status[i] == 1, spec.signal_strength));
    }
    ds.source = "synthetic:seed=" + std::to_string(spec.seed) + ";n=" + std::to_string(spec.n) +
                ";fraction=" + format_double(spec.anomaly_fraction) +
                ";signal=" + format_double(spec.signal_strength);
    return ds;
}

} // namespace ecobench

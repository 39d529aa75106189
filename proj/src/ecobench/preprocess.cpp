// SPDX-License-Identifier: Apache-2.0
#include "ecobench/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ecobench/rng.hpp"

namespace ecobench {

Dataset engineer_features(const Dataset& ds) {
    Dataset out = ds;
    out.engineered = true;
    return out;
}

namespace {

const std::vector<std::string>& categorical_columns() {
    static const std::vector<std::string> cols = {"protocol_type", "connection_state"};
    return cols;
}

std::string categorical_value(const FlowRecord& r, const std::string& column) {
    return column == "protocol_type" ? r.protocol_type : r.connection_state;
}

bool is_sustainability_column(const std::string& name) {
    return name == "power_consumption_watts" || name == "carbon_emission_gCO2eq" ||
           name == "energy_cost_usd" || name == "pue" || name == "power_per_vm";
}

} // namespace

LabelEncoding fit_label_encoding(const Dataset& ds) {
    LabelEncoding enc;
    for (const auto& col : categorical_columns()) {
        std::set<std::string> seen;
        for (const auto& r : ds.records)
            seen.insert(categorical_value(r, col));
        auto& m = enc.by_column[col];
        int code = 0;
        for (const auto& cat : seen) // std::set iterates lexicographically
            m[cat] = code++;
    }
    return enc;
}

FeatureMatrix encode(const Dataset& ds, const LabelEncoding& enc, bool exclude_sustainability) {
    if (!ds.engineered)
        throw UsageError("encode: dataset has not been through engineer_features");

    // Feature columns in schema order with categoricals in place; status is
    // the label, never a feature.
    std::vector<std::string> cols;
    for (const auto& name : canonical_columns()) {
        if (name == "status")
            continue;
        if (exclude_sustainability && is_sustainability_column(name))
            continue;
        cols.push_back(name);
    }
    for (const auto& name :
         {"bytes_per_packet", "payload_entropy_x_size", "resource_util_sum", "power_per_vm"}) {
        if (exclude_sustainability && is_sustainability_column(name))
            continue;
        cols.push_back(name);
    }

    FeatureMatrix fm;
    fm.columns = cols;
    fm.labels.reserve(ds.size());
    fm.values = Matrix(ds.size(), cols.size());

    // Numeric columns fetched once; categoricals coded per record.
    std::map<std::string, std::vector<double>> numeric;
    for (const auto& col : cols) {
        if (std::find(categorical_columns().begin(), categorical_columns().end(), col) !=
            categorical_columns().end())
            continue;
        numeric[col] = column_values(ds, col);
    }

    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& rec = ds.records[i];
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto& col = cols[j];
            auto it = numeric.find(col);
            if (it != numeric.end()) {
                fm.values(i, j) = it->second[i];
                continue;
            }
            const std::string token = categorical_value(rec, col);
            const auto& codes = enc.by_column.at(col);
            auto code = codes.find(token);
            if (code == codes.end())
                throw DataError("encoding error: column '" + col + "' has unseen category '" +
                                token + "'");
            fm.values(i, j) = static_cast<double>(code->second);
        }
        fm.labels.push_back(rec.status);
    }
    return fm;
}

std::pair<FeatureMatrix, LabelEncoding> encode(const Dataset& ds, bool exclude_sustainability) {
    LabelEncoding enc = fit_label_encoding(ds);
    return {encode(ds, enc, exclude_sustainability), std::move(enc)};
}

ScalerParams fit_scaler(const FeatureMatrix& train) {
    const std::size_t n = train.n(), d = train.dim();
    if (n == 0)
        throw DataError("fit_scaler: empty matrix");
    ScalerParams p;
    p.mean.assign(d, 0.0);
    p.stddev.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += train.values(i, j);
        p.mean[j] = s / static_cast<double>(n);
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dlt = train.values(i, j) - p.mean[j];
            v += dlt * dlt;
        }
        p.stddev[j] = std::sqrt(v / static_cast<double>(n));
    }
    return p;
}

FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& p) {
    if (p.mean.size() != m.dim())
        throw UsageError("apply_scaler: params have " + std::to_string(p.mean.size()) +
                         " columns, matrix has " + std::to_string(m.dim()));
    FeatureMatrix out = m;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        const double mu = p.mean[j], sd = p.stddev[j];
        for (std::size_t i = 0; i < m.n(); ++i)
            out.values(i, j) = sd == 0.0 ? 0.0 : (m.values(i, j) - mu) / sd;
    }
    return out;
}

namespace {

FeatureMatrix take(const FeatureMatrix& m, std::span<const std::size_t> idx) {
    FeatureMatrix out;
    out.columns = m.columns;
    out.values = m.values.take_rows(idx);
    out.labels.reserve(idx.size());
    for (auto i : idx)
        out.labels.push_back(m.labels[i]);
    return out;
}

} // namespace

SplitPair stratified_split(const FeatureMatrix& m, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw UsageError("stratified_split: test_fraction must be in (0, 1)");

    std::vector<std::size_t> class_rows[2];
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        class_rows[m.labels[i] == 1 ? 1 : 0].push_back(i);
    for (int c = 0; c < 2; ++c)
        if (class_rows[c].size() < 2)
            throw DataError("stratified_split: class " + std::to_string(c) + " has " +
                            std::to_string(class_rows[c].size()) + " members (need >= 2)");

    // Largest-remainder rounding of per-class quotas toward a fixed total,
    // remainders tied by class index.
    const auto total =
        static_cast<std::size_t>(std::llround(static_cast<double>(m.n()) * test_fraction));
    std::size_t counts[2];
    double remainders[2];
    std::size_t assigned = 0;
    for (int c = 0; c < 2; ++c) {
        const double quota = static_cast<double>(class_rows[c].size()) * test_fraction;
        counts[c] = static_cast<std::size_t>(std::floor(quota));
        remainders[c] = quota - std::floor(quota);
        assigned += counts[c];
    }
    while (assigned < total) {
        const int c = remainders[0] >= remainders[1] ? 0 : 1;
        ++counts[c];
        remainders[c] = -1.0;
        ++assigned;
    }

    std::vector<std::size_t> test_idx, train_idx;
    for (int c = 0; c < 2; ++c) {
        auto rows = class_rows[c];
        Rng rng(key_of({seed, 0x5b117u, static_cast<std::uint64_t>(c)}));
        rng.shuffle(rows);
        counts[c] = std::min(counts[c], rows.size());
        test_idx.insert(test_idx.end(), rows.begin(),
                        rows.begin() + static_cast<std::ptrdiff_t>(counts[c]));
        train_idx.insert(train_idx.end(), rows.begin() + static_cast<std::ptrdiff_t>(counts[c]),
                         rows.end());
    }
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    SplitPair sp;
    sp.seed = seed;
    sp.train = take(m, train_idx);
    sp.test = take(m, test_idx);
    return sp;
}

FeatureMatrix smote_core(const FeatureMatrix& train, int k,
                         const std::function<double()>& unit_draw) {
    if (k < 1)
        throw UsageError("smote: k must be >= 1");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < train.labels.size(); ++i)
        by_class[train.labels[i] == 1 ? 1 : 0].push_back(i);

    const int minority = by_class[1].size() <= by_class[0].size() ? 1 : 0;
    const auto& mino = by_class[minority];
    const auto& majo = by_class[1 - minority];
    if (mino.size() < 2)
        throw DataError("smote: minority class has " + std::to_string(mino.size()) +
                        " members (need >= 2)");

    const std::size_t n_synth = majo.size() - mino.size();
    FeatureMatrix out = train;
    if (n_synth == 0)
        return out;

    // Brute-force k nearest minority neighbors per minority row, ties broken
    // by row index. Minority counts are small enough that O(m^2 d) is fine.
    const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(k), mino.size() - 1);
    std::vector<std::vector<std::size_t>> neighbors(mino.size());
    for (std::size_t a = 0; a < mino.size(); ++a) {
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(mino.size() - 1);
        for (std::size_t b = 0; b < mino.size(); ++b) {
            if (b == a)
                continue;
            dist.emplace_back(squared_distance(train.values.row(mino[a]), train.values.row(mino[b])),
                              mino[b]);
        }
        std::sort(dist.begin(), dist.end());
        for (std::size_t t = 0; t < k_eff; ++t)
            neighbors[a].push_back(dist[t].second);
    }

    std::vector<double> synth(train.dim());
    for (std::size_t s = 0; s < n_synth; ++s) {
        const std::size_t a = s % mino.size(); // round-robin over minority rows
        const auto pick = static_cast<std::size_t>(unit_draw() * static_cast<double>(k_eff));
        const std::size_t nn = neighbors[a][std::min(pick, k_eff - 1)];
        const double lambda = unit_draw();
        auto x = train.values.row(mino[a]);
        auto z = train.values.row(nn);
        for (std::size_t j = 0; j < synth.size(); ++j)
            synth[j] = x[j] + lambda * (z[j] - x[j]);
        out.values.append_row(synth);
        out.labels.push_back(minority);
    }
    return out;
}

FeatureMatrix smote(const FeatureMatrix& train, int k, std::uint64_t seed) {
    Rng rng(key_of({seed, 0x510７eu}));
    return smote_core(train, k, [&rng] { return rng.next_unit(); });
}

} // namespace ecobench

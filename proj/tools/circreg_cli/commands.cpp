#include "circreg_cli/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "circreg/correlation.hpp"
#include "circreg/error.hpp"

namespace circreg::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

RunManifest make_manifest(const std::string& command, const json& config, std::uint64_t seed,
                          Clock::time_point start) {
    RunManifest m;
    m.command = command;
    m.config_hash = config_hash(config);
    m.seed = seed;
    m.version = CIRCREG_VERSION;
    m.wall_seconds = seconds_since(start);
    return m;
}

// Table and manifest in the requested format. CSV and text carry the manifest
// as a leading '#' line so table parsers can skip it.
std::string emit(const Table& table, const RunManifest& manifest, Format format, json result = nullptr) {
    if (format == Format::Json) {
        json out;
        out["manifest"] = manifest.to_json();
        if (result.is_null()) {
            json rows = json::array();
            for (const auto& row : table.rows) {
                json obj;
                for (std::size_t c = 0; c < table.header.size(); ++c) {
                    obj[table.header[c]] = c < row.size() ? row[c] : "";
                }
                rows.push_back(obj);
            }
            result = rows;
        }
        out["result"] = std::move(result);
        return out.dump(2) + "\n";
    }
    const std::string head = "# manifest " + manifest.to_json().dump() + "\n";
    return head + (format == Format::Csv ? render_csv(table) : render_text(table));
}

std::vector<StatisticSpec> statistics_for(const std::vector<double>& lambdas) {
    std::vector<StatisticSpec> specs;
    for (double l : lambdas) {
        specs.push_back(StatisticSpec::tn(l));
    }
    specs.push_back(StatisticSpec::kuiper());
    specs.push_back(StatisticSpec::watson());
    return specs;
}

std::vector<WindObservation> read_dwd(const std::filesystem::path& path, int hour, const DataSource& source) {
    DwdSelection sel;
    sel.hour = hour;
    sel.first_date = source.first_date;
    sel.last_date = source.last_date;
    return ingest_dwd_wind(path, sel);
}

template <class T>
std::vector<T> keep_last(std::vector<T> v, std::optional<std::size_t> last_n) {
    if (last_n && *last_n < v.size()) {
        v.erase(v.begin(), v.end() - static_cast<std::ptrdiff_t>(*last_n));
    }
    return v;
}

json fit_json(const FitResult& fit) {
    return {{"theta0", fit.params.theta0().radians()},
            {"theta1", fit.params.theta1().radians()},
            {"r", fit.params.r()},
            {"delta", fit.params.delta()},
            {"loglik", fit.loglik},
            {"converged", fit.converged},
            {"restarts", fit.n_restarts_used}};
}

}  // namespace

Format parse_format(const std::string& text) {
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "text") {
        return Format::Text;
    }
    if (text == "json") {
        return Format::Json;
    }
    throw std::invalid_argument("unknown format '" + text + "' (use csv, text or json)");
}

std::string render_csv(const Table& table) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out << (c ? "," : "") << cells[c];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) {
        line(row);
    }
    return out.str();
}

std::string render_text(const Table& table) {
    std::vector<std::size_t> width(table.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size() && c < width.size(); ++c) {
            width[c] = std::max(width[c], cells[c].size());
        }
    };
    measure(table.header);
    for (const auto& row : table.rows) {
        measure(row);
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) {
                text += "  ";
            }
            const std::size_t w = c < width.size() ? width[c] : cells[c].size();
            text += std::string(w - std::min(w, cells[c].size()), ' ') + cells[c];
        }
        out << text << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) {
        line(row);
    }
    return out.str();
}

json RunManifest::to_json() const {
    return {{"command", command},
            {"config_hash", config_hash},
            {"seed", seed},
            {"version", version},
            {"wall_seconds", wall_seconds}};
}

std::string config_hash(const json& config) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json DataSource::to_json() const {
    json j;
    if (dataset) {
        j["dataset"] = *dataset;
    }
    if (data) {
        j["data"] = data->string();
        j["unit"] = std::string(unit_name(unit));
        j["x_col"] = x_col;
        j["y_col"] = y_col;
    }
    if (dwd_x) {
        j["dwd_x"] = dwd_x->string();
        j["dwd_y"] = dwd_y ? dwd_y->string() : "";
        j["x_hour"] = x_hour;
        j["y_hour"] = y_hour;
    }
    if (first_date) {
        j["first_date"] = *first_date;
    }
    if (last_date) {
        j["last_date"] = *last_date;
    }
    if (last_n) {
        j["last_n"] = *last_n;
    }
    return j;
}

PairedSample load_pairs(const DataSource& source) {
    if (source.dataset) {
        return embedded_dataset(*source.dataset).sample();
    }
    if (source.data) {
        return ingest_csv(*source.data, source.unit, source.x_col, source.y_col);
    }
    if (source.dwd_x) {
        const auto& y_path = source.dwd_y ? *source.dwd_y : *source.dwd_x;
        const auto x = read_dwd(*source.dwd_x, source.x_hour, source);
        const auto y = read_dwd(y_path, source.y_hour, source);
        const PairedSample joined = pair_by_date(x, y);
        auto xs = keep_last(std::vector<Angle>(joined.x().begin(), joined.x().end()), source.last_n);
        auto ys = keep_last(std::vector<Angle>(joined.y().begin(), joined.y().end()), source.last_n);
        return PairedSample(std::move(xs), std::move(ys));
    }
    throw DataError("no input: give --dataset, --data or --dwd-x");
}

std::vector<Angle> load_series(const DataSource& source, const std::string& column) {
    if (source.dataset) {
        const PairedSample s = embedded_dataset(*source.dataset).sample();
        if (column != "x" && column != "y") {
            throw DataError("embedded datasets have columns x and y, not '" + column + "'");
        }
        const auto span = column == "x" ? s.x() : s.y();
        return {span.begin(), span.end()};
    }
    if (source.data) {
        std::ifstream in(*source.data);
        if (!in) {
            throw ParseError("cannot open '" + source.data->string() + "'", 0, 0);
        }
        return ingest_csv_column(in, source.unit, column);
    }
    if (source.dwd_x) {
        std::vector<Angle> out;
        for (const WindObservation& o : read_dwd(*source.dwd_x, source.x_hour, source)) {
            out.push_back(o.direction);
        }
        return keep_last(std::move(out), source.last_n);
    }
    throw DataError("no input: give --dataset, --data or --dwd-x");
}

nlohmann::json PowerStudy::to_json() const {
    json rows = json::array();
    for (const auto& [label, law] : innovations) {
        rows.push_back({{"label", label}, {"law", innovation_label(law)}});
    }
    return {{"name", name},   {"beta0", beta0.radians()}, {"beta1_r", beta1_r}, {"beta1_theta", beta1_theta.radians()},
            {"n", sizes},     {"innovations", rows},      {"alphas", alphas},   {"B", B},
            {"seed", seed},   {"lambdas", lambdas}};
}

std::vector<std::string> preset_names() {
    return {"size-109", "size-101", "size-301", "power-109", "power-101", "power-301"};
}

PowerStudy preset_study(const std::string& name) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    PowerStudy study;
    study.name = name;
    const std::string code = name.substr(name.find('-') + 1);
    study.beta0 = Angle(code[0] == '1' ? kPi / 4.0 : 3.0 * kPi / 4.0);
    study.beta1_r = code.substr(1) == "09" ? 0.9 : 0.1;
    study.beta1_theta = Angle(kPi / 6.0);
    study.sizes = {25, 50, 100};
    std::vector<std::string> rows;
    if (name.starts_with("size")) {
        rows = {"WC(0.1)", "WC(0.5)", "WC(0.9)"};
        study.alphas = {0.01, 0.05, 0.1};
    } else {
        rows = {"WN(0.5)", "WN(0.7)", "WN(0.9)", "VM(0.9)",  "VM(2)",     "VM(5)",     "VM(7)",   "Ca(0.3)",
                "Ca(0.5)", "CW(0.5)", "CW(1)",   "JP(2,0)", "JP(2,1)", "JP(2,1.5)", "Ba(3,0.5)", "Ba(3,1)"};
        study.alphas = {0.05};
    }
    for (const std::string& r : rows) {
        study.innovations.emplace_back(r, parse_innovation(r));
    }
    return study;
}

PowerStudy load_study(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file '" + path.string() + "'", 0, 0);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario file is not valid JSON: ") + e.what(), 0, 0);
    }
    try {
        PowerStudy study;
        if (j.contains("preset")) {
            study = preset_study(j.at("preset").get<std::string>());
        } else {
            study.name = j.value("name", path.stem().string());
            study.beta0 = Angle(j.at("beta0").get<double>());
            study.beta1_r = j.at("beta1_r").get<double>();
            study.beta1_theta = Angle(j.at("beta1_theta").get<double>());
            study.alphas = {0.05};
        }
        if (j.contains("n")) {
            study.sizes = j.at("n").is_array() ? j.at("n").get<std::vector<std::size_t>>()
                                               : std::vector<std::size_t>{j.at("n").get<std::size_t>()};
        }
        if (j.contains("innovations")) {
            study.innovations.clear();
            for (const auto& item : j.at("innovations")) {
                const std::string text = item.get<std::string>();
                study.innovations.emplace_back(text, parse_innovation(text));
            }
        }
        if (j.contains("alphas")) {
            study.alphas = j.at("alphas").get<std::vector<double>>();
        }
        if (j.contains("lambdas")) {
            study.lambdas = j.at("lambdas").get<std::vector<double>>();
        }
        study.B = j.value("B", study.B);
        study.seed = j.value("seed", study.seed);
        if (study.sizes.empty() || study.innovations.empty()) {
            throw ParseError("scenario needs at least one sample size and one innovation", 0, 0);
        }
        return study;
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario file: ") + e.what(), 0, 0);
    }
}

Table fit_table(const FitResult& fit, std::size_t n) {
    const ModelParams& p = fit.params;
    Table t;
    t.header = {"n", "theta0", "theta1", "r", "delta", "mu_pi_4", "mu_3pi_4", "loglik"};
    t.rows.push_back({std::to_string(n), fmt(p.theta0().radians()), fmt(p.theta1().radians()), fmt(p.r()),
                      fmt(p.delta()), fmt(conditional_mean(p, Angle(kPi / 4.0)).radians()),
                      fmt(conditional_mean(p, Angle(3.0 * kPi / 4.0)).radians()), fmt(fit.loglik)});
    return t;
}

Table gof_table(const TestReport& report) {
    Table t;
    t.header = {"statistic", "observed", "p_value"};
    for (std::size_t s = 0; s < report.statistics.size(); ++s) {
        t.rows.push_back({report.statistics[s].label(), fmt(report.observed[s], 6), fmt(report.p_values[s], 4)});
    }
    return t;
}

std::string cmd_fit(const FitOptions& options) {
    const auto start = Clock::now();
    const PairedSample data = load_pairs(options.source);
    const FitResult fit = fit_mle(data);
    if (!fit.converged) {
        throw FitFailure("no restart of the likelihood maximization converged");
    }
    const json config = {{"source", options.source.to_json()}};
    const RunManifest manifest = make_manifest("fit", config, 0, start);
    json result = fit_json(fit);
    result["n"] = data.size();
    result["mu_pi_4"] = conditional_mean(fit.params, Angle(kPi / 4.0)).radians();
    result["mu_3pi_4"] = conditional_mean(fit.params, Angle(3.0 * kPi / 4.0)).radians();
    result["fitted"] = to_radians(fit.fitted);
    result["residuals"] = to_radians(fit.residuals);
    return emit(fit_table(fit, data.size()), manifest, options.format, result);
}

std::string cmd_gof(const GofOptions& options) {
    const auto start = Clock::now();
    const PairedSample data = load_pairs(options.source);
    BootstrapConfig config;
    config.B = options.B;
    config.seed = options.seed;
    config.statistics = statistics_for(options.lambdas);
    config.threads = options.threads;
    const TestReport report = classical_bootstrap(data, config);

    const json cfg = {{"source", options.source.to_json()},
                      {"B", options.B},
                      {"seed", options.seed},
                      {"lambdas", options.lambdas}};
    const RunManifest manifest = make_manifest("gof", cfg, options.seed, start);
    json result;
    result["fit"] = fit_json(report.fit);
    result["B"] = report.B;
    result["seed"] = report.seed;
    result["redrawn"] = report.redrawn;
    json stats = json::array();
    for (std::size_t s = 0; s < report.statistics.size(); ++s) {
        stats.push_back({{"statistic", report.statistics[s].label()},
                         {"observed", report.observed[s]},
                         {"p_value", report.p_values[s]},
                         {"replicates", report.replicates[s]}});
    }
    result["statistics"] = stats;
    return emit(gof_table(report), manifest, options.format, result);
}

std::string cmd_power(const PowerOptions& options) {
    const auto start = Clock::now();
    const PowerStudy& study = options.study;
    const std::vector<StatisticSpec> specs = statistics_for(study.lambdas);

    // results[row][size]
    std::vector<std::vector<PowerResult>> results(study.innovations.size());
    for (std::size_t i = 0; i < study.innovations.size(); ++i) {
        for (std::size_t n : study.sizes) {
            ScenarioConfig sc;
            sc.beta0 = study.beta0;
            sc.beta1_r = study.beta1_r;
            sc.beta1_theta = study.beta1_theta;
            sc.n = n;
            sc.innovation = study.innovations[i].second;
            sc.B = study.B;
            sc.alphas = study.alphas;
            sc.seed = study.seed;
            sc.statistics = specs;
            sc.threads = study.threads;
            results[i].push_back(warp_speed_power(sc));
        }
    }

    Table t;
    t.header = {"alpha", "innovation"};
    for (std::size_t n : study.sizes) {
        for (const StatisticSpec& s : specs) {
            t.header.push_back("n" + std::to_string(n) + ":" + s.label());
        }
    }
    const bool text = options.format == Format::Text;
    for (std::size_t a = 0; a < study.alphas.size(); ++a) {
        for (std::size_t i = 0; i < study.innovations.size(); ++i) {
            std::vector<std::string> row{fmt_g(study.alphas[a]), study.innovations[i].first};
            for (std::size_t k = 0; k < study.sizes.size(); ++k) {
                for (std::size_t s = 0; s < specs.size(); ++s) {
                    const double rate = results[i][k].rejection_rate[s][a];
                    row.push_back(text ? fmt(100.0 * rate, 0) : fmt(100.0 * rate, 2));
                }
            }
            t.rows.push_back(std::move(row));
        }
    }
    const RunManifest manifest = make_manifest("power", study.to_json(), study.seed, start);
    return emit(t, manifest, options.format);
}

std::string cmd_autocorr(const AutocorrOptions& options) {
    const auto start = Clock::now();
    const std::vector<Angle> series = load_series(options.source, options.column);
    const auto lags = circular_autocorrelation(series, options.max_lag);
    Table t;
    t.header = {"lag", "n_pairs", "correlation", "z", "p_value"};
    for (const LagCorrelation& l : lags) {
        t.rows.push_back({std::to_string(l.lag), std::to_string(series.size() - l.lag), fmt(l.result.coefficient),
                          fmt(l.result.z), fmt(l.result.p_value)});
    }
    const json cfg = {{"source", options.source.to_json()}, {"column", options.column}, {"max_lag", options.max_lag}};
    return emit(t, make_manifest("autocorr", cfg, 0, start), options.format);
}

Table stackplot_table(const std::vector<Angle>& angles, AngleUnit unit) {
    Table t;
    t.header = {"angle", "stack"};
    std::map<long, int> height;
    for (Angle a : angles) {
        const long bin = std::lround(a.degrees()) % 360;
        const int level = ++height[bin];
        const double value = unit == AngleUnit::Degrees ? static_cast<double>(bin) : deg_to_rad(static_cast<double>(bin));
        t.rows.push_back({unit == AngleUnit::Degrees ? std::to_string(bin) : fmt(value, 6), std::to_string(level)});
    }
    return t;
}

std::string cmd_stackplot_data(const StackplotOptions& options) {
    const auto start = Clock::now();
    std::vector<Angle> angles;
    if (options.residuals) {
        const FitResult fit = fit_mle(load_pairs(options.source));
        angles = fit.residuals;
    } else {
        angles = load_series(options.source, options.column);
    }
    const json cfg = {{"source", options.source.to_json()},
                      {"column", options.column},
                      {"residuals", options.residuals}};
    return emit(stackplot_table(angles, options.source.unit), make_manifest("stackplot-data", cfg, 0, start),
                options.format);
}

std::string cmd_datasets_list(Format format) {
    const auto start = Clock::now();
    Table t;
    t.header = {"id", "n", "unit", "x", "y", "checksum"};
    for (const DatasetDescriptor& d : embedded_datasets()) {
        char sum[17];
        std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(transcription_checksum(d)));
        t.rows.push_back({d.id, std::to_string(d.x.size()), std::string(unit_name(d.unit)), d.x_name, d.y_name, sum});
    }
    return emit(t, make_manifest("datasets list", json::object(), 0, start), format);
}

std::string cmd_datasets_show(const std::string& id, Format format) {
    const auto start = Clock::now();
    const DatasetDescriptor* found = nullptr;
    for (const DatasetDescriptor& d : embedded_datasets()) {
        if (d.id == id) {
            found = &d;
        }
    }
    if (!found) {
        throw DataError("no embedded dataset '" + id + "'");
    }
    Table t;
    t.header = {"x", "y"};
    for (std::size_t i = 0; i < found->x.size(); ++i) {
        t.rows.push_back({fmt_g(found->x[i]), fmt_g(found->y[i])});
    }
    const json cfg = {{"id", id}};
    return emit(t, make_manifest("datasets show", cfg, 0, start), format,
                format == Format::Json ? json{{"id", found->id},
                                              {"unit", std::string(unit_name(found->unit))},
                                              {"x_name", found->x_name},
                                              {"y_name", found->y_name},
                                              {"provenance", found->provenance},
                                              {"x", found->x},
                                              {"y", found->y}}
                                       : json(nullptr));
}

}  // namespace circreg::cli

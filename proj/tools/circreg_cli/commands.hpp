#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "circreg/bootstrap.hpp"
#include "circreg/datasets.hpp"
#include "circreg/ingest.hpp"
#include "circreg/regression.hpp"

namespace circreg::cli {

enum class Format { Csv, Text, Json };

Format parse_format(const std::string& text);

/// Rectangular result; rendered as CSV or as space-aligned text.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& table);
std::string render_text(const Table& table);

/// Provenance record attached to every output.
struct RunManifest {
    std::string command;
    std::string config_hash;  ///< FNV-1a of the canonical config JSON, hex
    std::uint64_t seed = 0;
    std::string version;
    double wall_seconds = 0.0;

    nlohmann::json to_json() const;
};

std::string config_hash(const nlohmann::json& config);

/// Where paired or single-series angles come from.
struct DataSource {
    std::optional<std::string> dataset;         ///< embedded id
    std::optional<std::filesystem::path> data;  ///< CSV file
    AngleUnit unit = AngleUnit::Degrees;
    std::string x_col = "x";
    std::string y_col = "y";

    // DWD hourly wind files; x and y may be the same file at different hours.
    std::optional<std::filesystem::path> dwd_x;
    std::optional<std::filesystem::path> dwd_y;
    int x_hour = 12;
    int y_hour = 12;
    std::optional<std::int32_t> first_date;
    std::optional<std::int32_t> last_date;
    std::optional<std::size_t> last_n;  ///< keep the most recent observations only

    nlohmann::json to_json() const;
};

PairedSample load_pairs(const DataSource& source);

/// Series input: a CSV column, an embedded dataset's x or y, or the x side of a DWD file.
std::vector<Angle> load_series(const DataSource& source, const std::string& column);

struct FitOptions {
    DataSource source;
    Format format = Format::Text;
};

struct GofOptions {
    DataSource source;
    std::size_t B = 10000;
    std::uint64_t seed = 1;
    std::vector<double> lambdas{std::begin(kDefaultLambdas), std::end(kDefaultLambdas)};
    unsigned threads = 1;
    Format format = Format::Text;
};

/// One power or size study: a regression truth, innovation rows and sample sizes.
struct PowerStudy {
    std::string name;
    Angle beta0;
    double beta1_r = 0.0;
    Angle beta1_theta;
    std::vector<std::size_t> sizes;
    std::vector<std::pair<std::string, InnovationLaw>> innovations;  ///< row label, law
    std::vector<double> alphas;
    std::size_t B = 10000;
    std::uint64_t seed = 1;
    std::vector<double> lambdas{std::begin(kDefaultLambdas), std::end(kDefaultLambdas)};
    unsigned threads = 1;

    nlohmann::json to_json() const;
};

/// Built-in studies: size-109, size-101, size-301, power-109, power-101, power-301.
/// The digits name beta0 = e^{i pi/4} (1) or e^{i 3pi/4} (3) and |beta1| = 0.9 (09) or 0.1 (01).
std::vector<std::string> preset_names();
PowerStudy preset_study(const std::string& name);

/// Reads a JSON scenario file; see README for the schema.
PowerStudy load_study(const std::filesystem::path& path);

struct PowerOptions {
    PowerStudy study;
    Format format = Format::Text;
};

struct AutocorrOptions {
    DataSource source;
    std::string column = "x";
    std::size_t max_lag = 5;
    Format format = Format::Text;
};

struct StackplotOptions {
    DataSource source;
    std::string column = "x";
    bool residuals = false;  ///< fit the paired model and stack its residuals
    Format format = Format::Csv;
};

std::string cmd_fit(const FitOptions& options);
std::string cmd_gof(const GofOptions& options);
std::string cmd_power(const PowerOptions& options);
std::string cmd_autocorr(const AutocorrOptions& options);
std::string cmd_stackplot_data(const StackplotOptions& options);
std::string cmd_datasets_list(Format format);
std::string cmd_datasets_show(const std::string& id, Format format);

/// Stack plot coordinates: angles rounded to whole degrees, stacked upward in input order.
Table stackplot_table(const std::vector<Angle>& angles, AngleUnit unit);

/// Table-8 row of a fit: n, estimates and the conditional means at x = pi/4 and 3pi/4.
Table fit_table(const FitResult& fit, std::size_t n);
Table gof_table(const TestReport& report);

}  // namespace circreg::cli

// circreg: fit and test circular-circular Moebius regression models.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "circreg/error.hpp"
#include "circreg_cli/commands.hpp"

namespace {

using namespace circreg;
using namespace circreg::cli;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitFit = 3;

struct SourceFlags {
    std::string dataset;
    std::string data;
    std::string unit = "deg";
    std::string x_col = "x";
    std::string y_col = "y";
    std::string dwd_x;
    std::string dwd_y;
    int x_hour = 12;
    int y_hour = 12;
    std::int32_t from = 0;
    std::int32_t to = 0;
    std::size_t last = 0;

    void attach(CLI::App* app) {
        app->add_option("--dataset", dataset, "Embedded dataset id (see `datasets list`)");
        app->add_option("--data", data, "CSV file with a header row");
        app->add_option("--unit", unit, "Angle unit of --data")->check(CLI::IsMember({"deg", "rad"}));
        app->add_option("--x", x_col, "Covariate column of --data");
        app->add_option("--y", y_col, "Response column of --data");
        app->add_option("--dwd-x", dwd_x, "DWD hourly wind file for the covariate");
        app->add_option("--dwd-y", dwd_y, "DWD hourly wind file for the response (default: --dwd-x)");
        app->add_option("--x-hour", x_hour, "Hour of day for the covariate")->check(CLI::Range(0, 23));
        app->add_option("--y-hour", y_hour, "Hour of day for the response")->check(CLI::Range(0, 23));
        app->add_option("--from", from, "First date, yyyymmdd");
        app->add_option("--to", to, "Last date, yyyymmdd");
        app->add_option("--last", last, "Keep only the most recent N observations");
    }

    DataSource source() const {
        DataSource s;
        if (!dataset.empty()) {
            s.dataset = dataset;
        }
        if (!data.empty()) {
            s.data = data;
        }
        s.unit = parse_unit(unit);
        s.x_col = x_col;
        s.y_col = y_col;
        if (!dwd_x.empty()) {
            s.dwd_x = dwd_x;
        }
        if (!dwd_y.empty()) {
            s.dwd_y = dwd_y;
        }
        s.x_hour = x_hour;
        s.y_hour = y_hour;
        if (from) {
            s.first_date = from;
        }
        if (to) {
            s.last_date = to;
        }
        if (last) {
            s.last_n = last;
        }
        return s;
    }
};

void add_format(CLI::App* app, std::string& format, const std::string& fallback) {
    format = fallback;
    app->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circular-circular regression with wrapped Cauchy errors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CIRCREG_VERSION));

    SourceFlags fit_src;
    std::string fit_format;
    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of the Moebius regression model");
    fit_src.attach(fit);
    add_format(fit, fit_format, "text");

    SourceFlags gof_src;
    std::string gof_format;
    std::size_t gof_B = 10000;
    std::uint64_t gof_seed = 1;
    std::vector<double> gof_lambdas;
    unsigned gof_threads = 1;
    auto* gof = app.add_subcommand("gof", "Parametric bootstrap goodness-of-fit test");
    gof_src.attach(gof);
    gof->add_option("--B", gof_B, "Bootstrap replicates")->check(CLI::PositiveNumber);
    gof->add_option("--seed", gof_seed, "Master seed");
    gof->add_option("--lambda", gof_lambdas, "Poisson weight parameter for Tn (repeatable)");
    gof->add_option("--threads", gof_threads, "Worker threads (0 = all cores)");
    add_format(gof, gof_format, "text");

    std::string power_scenario;
    std::string power_preset;
    std::string power_format;
    std::size_t power_B = 0;
    std::uint64_t power_seed = 0;
    std::vector<double> power_lambdas;
    std::vector<double> power_alphas;
    std::vector<std::size_t> power_n;
    std::vector<std::string> power_innovations;
    unsigned power_threads = 1;
    auto* power = app.add_subcommand("power", "Warp-speed size and power study");
    power->add_option("scenario", power_scenario, "JSON scenario file");
    power->add_option("--preset", power_preset, "Built-in study")->check(CLI::IsMember(preset_names()));
    power->add_option("--B", power_B, "Monte Carlo iterations")->check(CLI::PositiveNumber);
    power->add_option("--seed", power_seed, "Master seed");
    power->add_option("--lambda", power_lambdas, "Poisson weight parameter for Tn (repeatable)");
    power->add_option("--alpha", power_alphas, "Significance level (repeatable)");
    power->add_option("--n", power_n, "Sample size (repeatable)");
    power->add_option("--innovation", power_innovations, "Innovation law such as WN(0.7) (repeatable)");
    power->add_option("--threads", power_threads, "Worker threads (0 = all cores)");
    add_format(power, power_format, "text");

    SourceFlags ac_src;
    std::string ac_format;
    std::string ac_column = "x";
    std::size_t ac_lag = 5;
    auto* autocorr = app.add_subcommand("autocorr", "Lagged circular autocorrelations of a series");
    ac_src.attach(autocorr);
    autocorr->add_option("--column", ac_column, "Series column (x or y for embedded data)");
    autocorr->add_option("--max-lag", ac_lag, "Largest lag");
    add_format(autocorr, ac_format, "text");

    SourceFlags sp_src;
    std::string sp_format;
    std::string sp_column = "x";
    bool sp_residuals = false;
    auto* stack = app.add_subcommand("stackplot-data", "Stack plot coordinates of a series or of fit residuals");
    sp_src.attach(stack);
    stack->add_option("--column", sp_column, "Series column (x or y for embedded data)");
    stack->add_flag("--residuals", sp_residuals, "Stack the residuals of the fitted model");
    add_format(stack, sp_format, "csv");

    std::string ds_format;
    std::string ds_id;
    auto* datasets = app.add_subcommand("datasets", "Embedded datasets");
    datasets->require_subcommand(1);
    auto* ds_list = datasets->add_subcommand("list", "List embedded datasets");
    add_format(ds_list, ds_format, "text");
    std::string ds_show_format;
    auto* ds_show = datasets->add_subcommand("show", "Print an embedded dataset");
    ds_show->add_option("id", ds_id, "Dataset id")->required();
    add_format(ds_show, ds_show_format, "csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        std::string out;
        if (*fit) {
            out = cmd_fit({fit_src.source(), parse_format(fit_format)});
        } else if (*gof) {
            GofOptions o;
            o.source = gof_src.source();
            o.B = gof_B;
            o.seed = gof_seed;
            if (!gof_lambdas.empty()) {
                o.lambdas = gof_lambdas;
            }
            o.threads = gof_threads;
            o.format = parse_format(gof_format);
            out = cmd_gof(o);
        } else if (*power) {
            if (power_scenario.empty() == power_preset.empty()) {
                std::cerr << "power: give exactly one of a scenario file or --preset\n";
                return kExitUsage;
            }
            PowerOptions o;
            o.study = power_preset.empty() ? load_study(power_scenario) : preset_study(power_preset);
            if (power_B) {
                o.study.B = power_B;
            }
            if (power->count("--seed")) {
                o.study.seed = power_seed;
            }
            if (!power_lambdas.empty()) {
                o.study.lambdas = power_lambdas;
            }
            if (!power_alphas.empty()) {
                o.study.alphas = power_alphas;
            }
            if (!power_n.empty()) {
                o.study.sizes = power_n;
            }
            if (!power_innovations.empty()) {
                o.study.innovations.clear();
                for (const std::string& text : power_innovations) {
                    o.study.innovations.emplace_back(text, parse_innovation(text));
                }
            }
            o.study.threads = power_threads;
            o.format = parse_format(power_format);
            out = cmd_power(o);
        } else if (*autocorr) {
            out = cmd_autocorr({ac_src.source(), ac_column, ac_lag, parse_format(ac_format)});
        } else if (*stack) {
            out = cmd_stackplot_data({sp_src.source(), sp_column, sp_residuals, parse_format(sp_format)});
        } else if (*ds_list) {
            out = cmd_datasets_list(parse_format(ds_format));
        } else if (*ds_show) {
            out = cmd_datasets_show(ds_id, parse_format(ds_show_format));
        }
        std::fwrite(out.data(), 1, out.size(), stdout);
        return 0;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const FitFailure& e) {
        std::cerr << "fit failure: " << e.what() << '\n';
        return kExitFit;
    } catch (const SingularMap& e) {
        std::cerr << "fit failure: " << e.what() << '\n';
        return kExitFit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    }
}

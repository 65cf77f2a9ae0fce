#include <gtest/gtest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "circreg/datasets.hpp"
#include "circreg/error.hpp"
#include "circreg/ingest.hpp"
#include "circreg_cli/commands.hpp"

using namespace circreg;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string wind_csv() {
    const auto& ds = embedded_dataset("wind-milwaukee");
    std::ostringstream out;
    out << "x,y\n";
    for (std::size_t i = 0; i < ds.x.size(); ++i) {
        out << ds.x[i] << ',' << ds.y[i] << '\n';
    }
    return out.str();
}

const char* kDwdHeader = "STATIONS_ID;MESS_DATUM;QN_3;   F;   D;eor\n";

// 2015-01-07 and 2015-01-14 are Wednesdays, 2015-01-08 is a Thursday.
std::string dwd_sample() {
    return std::string(kDwdHeader) +
           "1420;2015010706;   10;   3.1;  200;eor\n"
           "1420;2015010712;   10;   4.0;  360;eor\n"
           "1420;2015010812;   10;   4.0;   90;eor\n"
           "1420;2015011412;   10;   2.0; -999;eor\n"
           "1420;2015012112;   10;   2.0;  990;eor\n"
           "1420;2015012812;   10;   2.0;  250;eor\n"
           "1420;2015011406;   10;   2.0;  120;eor\n";
}

}  // namespace

TEST(Datasets, TranscriptionMatchesTables) {
    const auto all = embedded_datasets();
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(canonical_text(all[0]),
              "x: 356,97.2,211,232,343,292,157,302,335,302,324,84.6,324,340,157,238,254,146,232,122,329\n"
              "y: 119,162,221,259,270,28.8,97.2,292,39.6,313,94.2,45,47,108,221,270,119,248,270,45,23.4\n");
    EXPECT_EQ(canonical_text(all[1]),
              "x: 30,15,11,4,348,347,341,333,332,285\n"
              "y: 25,5,349,358,340,347,345,331,329,287\n");
    EXPECT_EQ(canonical_text(all[2]),
              "x: 0.12,0.27,0.29,0.3,0.31,0.34,0.35,0.58,0.62,1.6,2.35,2.62,2.83,-3.06,-2.86,-2.77,-2.69,-2.57,"
              "-2.56,-2.45,-2.43,-2.37,-2.18,-2.16,-2.04,-1.61,-1.32,-1.22,-0.84,-0.77,-0.38,-0.36,-0.26,-0.19,"
              "-0.18,-0.13,-0.12,-0.02\n"
              "y: 0.61,0.95,-2.85,0.67,-0.13,0.08,2.67,1.72,1.45,1.59,-2.51,-2.92,1.42,2.74,2.88,-3.01,-2.69,3.05,"
              "-2.35,2.68,-2.86,-2.51,2.69,-2.11,-1.48,-2.06,-2.63,-1.49,-0.83,0.86,0.26,1.5,1.03,0.33,-1.15,"
              "-0.21,-0.55,0.91\n");
    for (const auto& ds : all) {
        EXPECT_EQ(transcription_checksum(ds), fnv1a(canonical_text(ds))) << ds.id;
    }
    EXPECT_EQ(all[0].id, "wind-milwaukee");
    EXPECT_EQ(all[2].unit, AngleUnit::Radians);
    EXPECT_THROW(embedded_dataset("nope"), std::out_of_range);
}

TEST(Datasets, Units) {
    EXPECT_EQ(parse_unit("deg"), AngleUnit::Degrees);
    EXPECT_EQ(parse_unit("radians"), AngleUnit::Radians);
    EXPECT_THROW(parse_unit("grad"), std::invalid_argument);
    EXPECT_NEAR(angle_from(-0.02, AngleUnit::Radians).radians(), kTwoPi - 0.02, 1e-15);
}

TEST(IngestCsv, WindTable) {
    std::istringstream in(wind_csv());
    const PairedSample s = ingest_csv(in, AngleUnit::Degrees, "x", "y");
    ASSERT_EQ(s.size(), 21u);
    EXPECT_NEAR(s.x()[0].radians(), 6.2133721370998, 1e-12);
    EXPECT_NEAR(s.y()[5].degrees(), 28.8, 1e-12);
}

TEST(IngestCsv, EmptyFile) {
    std::istringstream in("");
    EXPECT_THROW(ingest_csv(in, AngleUnit::Degrees, "x", "y"), ParseError);
    std::istringstream header_only("x,y\n");
    EXPECT_THROW(ingest_csv(header_only, AngleUnit::Degrees, "x", "y"), ParseError);
}

TEST(IngestCsv, RadiansCanonicalized) {
    std::istringstream in("a,b\n7.0,-1.0\n0.5,0.5\n");
    const PairedSample s = ingest_csv(in, AngleUnit::Radians, "a", "b");
    EXPECT_NEAR(s.x()[0].radians(), 7.0 - kTwoPi, 1e-15);
    EXPECT_NEAR(s.y()[0].radians(), kTwoPi - 1.0, 1e-15);
}

TEST(IngestCsv, Errors) {
    std::istringstream big("x,y\n10,20\n400,5\n");
    EXPECT_THROW(ingest_csv(big, AngleUnit::Degrees, "x", "y"), UnitError);
    std::istringstream missing("x,z\n10,20\n");
    EXPECT_THROW(ingest_csv(missing, AngleUnit::Degrees, "x", "y"), ParseError);
    std::istringstream bad("x,y\n10,20\n1o,5\n");
    try {
        ingest_csv(bad, AngleUnit::Degrees, "x", "y");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 1u);
    }
    std::istringstream nan("x,y\nnan,20\n");
    EXPECT_THROW(ingest_csv(nan, AngleUnit::Degrees, "x", "y"), ParseError);
}

TEST(IngestCsv, SingleColumn) {
    std::istringstream in("x,y\n90,1\n180,2\n");
    const auto xs = ingest_csv_column(in, AngleUnit::Degrees, "x");
    ASSERT_EQ(xs.size(), 2u);
    EXPECT_NEAR(xs[1].radians(), kPi, 1e-15);
}

TEST(Dwd, SelectsWednesdayNoon) {
    std::istringstream in(dwd_sample());
    const auto obs = ingest_dwd_wind(in, DwdSelection{});
    ASSERT_EQ(obs.size(), 2u);
    EXPECT_EQ(obs[0].timestamp, 2015010712);
    EXPECT_EQ(obs[0].direction.radians(), 0.0);
    EXPECT_EQ(obs[1].date(), 20150128);
    EXPECT_NEAR(obs[1].direction.degrees(), 250.0, 1e-12);
}

TEST(Dwd, HourDateAndStationFilters) {
    DwdSelection sel;
    sel.hour = 6;
    std::istringstream in(dwd_sample());
    const auto obs = ingest_dwd_wind(in, sel);
    ASSERT_EQ(obs.size(), 2u);
    EXPECT_EQ(obs[1].hour(), 6);

    sel.first_date = 20150110;
    std::istringstream in2(dwd_sample());
    EXPECT_EQ(ingest_dwd_wind(in2, sel).size(), 1u);

    sel.station = 99;
    std::istringstream in3(dwd_sample());
    EXPECT_THROW(ingest_dwd_wind(in3, sel), EmptySelection);
}

TEST(Dwd, FormatErrors) {
    std::istringstream no_header("1420;2015010712;10;4.0;360;eor\n");
    EXPECT_THROW(ingest_dwd_wind(no_header, DwdSelection{}), FormatError);
    std::istringstream empty("");
    EXPECT_THROW(ingest_dwd_wind(empty, DwdSelection{}), FormatError);
    std::istringstream odd(std::string(kDwdHeader) + "1420;2015010712;10;4.0;355;eor\n");
    EXPECT_THROW(ingest_dwd_wind(odd, DwdSelection{}), FormatError);
    std::istringstream range(std::string(kDwdHeader) + "1420;2015010712;10;4.0;370;eor\n");
    EXPECT_THROW(ingest_dwd_wind(range, DwdSelection{}), FormatError);
}

TEST(Dwd, PairByDate) {
    std::istringstream a(dwd_sample());
    DwdSelection six;
    six.hour = 6;
    const auto x = ingest_dwd_wind(a, six);
    std::istringstream b(dwd_sample());
    const auto y = ingest_dwd_wind(b, DwdSelection{});
    const PairedSample s = pair_by_date(x, y);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s.x()[0].degrees(), 200.0, 1e-12);
    EXPECT_EQ(s.y()[0].radians(), 0.0);
    EXPECT_THROW(pair_by_date(std::vector<WindObservation>{}, y), EmptySelection);
}

TEST(Dwd, Weekday) {
    EXPECT_EQ(weekday_of(20150107), std::chrono::Wednesday);
    EXPECT_EQ(weekday_of(20231227), std::chrono::Wednesday);
    EXPECT_EQ(weekday_of(20240101), std::chrono::Monday);
}

TEST(Stackplot, DuplicatesStackUpward) {
    const std::vector<Angle> xs{Angle::from_degrees(10), Angle::from_degrees(20), Angle::from_degrees(10.2),
                                Angle::from_degrees(359.8)};
    const cli::Table t = cli::stackplot_table(xs, AngleUnit::Degrees);
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[0], (std::vector<std::string>{"10", "1"}));
    EXPECT_EQ(t.rows[2], (std::vector<std::string>{"10", "2"}));
    EXPECT_EQ(t.rows[3], (std::vector<std::string>{"0", "1"}));
}

TEST(Stackplot, EmptyInput) {
    const cli::Table t = cli::stackplot_table({}, AngleUnit::Degrees);
    EXPECT_TRUE(t.rows.empty());
    EXPECT_EQ(cli::render_csv(t), "angle,stack\n");
}

TEST(Stackplot, ResidualsRoundTripThroughIngest) {
    const PairedSample data = embedded_dataset("gene-peaks").sample();
    const FitResult fit = fit_mle(data);
    std::ostringstream csv;
    csv.precision(17);
    csv << "x\n";
    for (Angle e : fit.residuals) {
        csv << e.radians() << '\n';
    }
    std::istringstream in(csv.str());
    const auto back = ingest_csv_column(in, AngleUnit::Radians, "x");
    ASSERT_EQ(back.size(), fit.residuals.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i], fit.residuals[i]);
    }
    const cli::Table a = cli::stackplot_table(back, AngleUnit::Radians);
    const cli::Table b = cli::stackplot_table(fit.residuals, AngleUnit::Radians);
    EXPECT_EQ(a.rows, b.rows);
}

TEST(Render, CsvAndText) {
    cli::Table t;
    t.header = {"a", "bb"};
    t.rows = {{"1", "2"}, {"333", "4"}};
    EXPECT_EQ(cli::render_csv(t), "a,bb\n1,2\n333,4\n");
    EXPECT_EQ(cli::render_text(t), "  a  bb\n  1   2\n333   4\n");
}

TEST(Manifest, HashIsStable) {
    const nlohmann::json a = {{"B", 10}, {"seed", 3}};
    const nlohmann::json b = {{"seed", 3}, {"B", 10}};
    EXPECT_EQ(cli::config_hash(a), cli::config_hash(b));
    EXPECT_EQ(cli::config_hash(a).size(), 16u);
    EXPECT_NE(cli::config_hash(a), cli::config_hash({{"B", 11}, {"seed", 3}}));
}

TEST(Presets, Shapes) {
    for (const std::string& name : cli::preset_names()) {
        const cli::PowerStudy s = cli::preset_study(name);
        EXPECT_EQ(s.sizes, (std::vector<std::size_t>{25, 50, 100})) << name;
        EXPECT_FALSE(s.innovations.empty()) << name;
    }
    const cli::PowerStudy s = cli::preset_study("power-109");
    EXPECT_NEAR(s.beta0.radians(), kPi / 4, 1e-15);
    EXPECT_EQ(s.beta1_r, 0.9);
    EXPECT_EQ(s.innovations.size(), 16u);
    EXPECT_THROW(cli::preset_study("power-999"), std::invalid_argument);
}

TEST(Scenario, LoadsJson) {
    const auto path = std::filesystem::temp_directory_path() / "circreg_scenario_test.json";
    {
        std::ofstream f(path);
        f << R"j({"name":"t","beta0":0.785398,"beta1_r":0.9,"beta1_theta":0.523599,)j"
             R"j("n":[50],"innovations":["WC(0.5)","VM(5)"],"alphas":[0.05],"B":100,"seed":7})j";
    }
    const cli::PowerStudy s = cli::load_study(path);
    std::filesystem::remove(path);
    EXPECT_EQ(s.sizes, (std::vector<std::size_t>{50}));
    ASSERT_EQ(s.innovations.size(), 2u);
    EXPECT_EQ(s.innovations[1].first, "VM(5)");
    EXPECT_EQ(s.B, 100u);
    EXPECT_EQ(s.seed, 7u);
}

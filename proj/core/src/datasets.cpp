#include "circreg/datasets.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace circreg {

namespace {

std::vector<DatasetDescriptor> build_embedded() {
    std::vector<DatasetDescriptor> out;

    // Wind direction at a Milwaukee weather station, 21 consecutive days (Johnson & Wehrly 1977).
    out.push_back({
        "wind-milwaukee",
        AngleUnit::Degrees,
        "6am",
        "noon",
        "Johnson & Wehrly (1977); wind direction at 6 a.m. (x) and noon (y), degrees",
        {356, 97.2, 211, 232, 343, 292, 157, 302, 335, 302, 324, 84.6, 324, 340, 157, 238, 254, 146, 232, 122, 329},
        {119, 162, 221, 259, 270, 28.8, 97.2, 292, 39.6, 313, 94.2, 45, 47, 108, 221, 270, 119, 248, 270, 45, 23.4},
    });

    // Peak times of diastolic blood pressure, two consecutive measurements (Downs 1974).
    out.push_back({
        "blood-pressure",
        AngleUnit::Degrees,
        "theta",
        "phi",
        "Downs (1974); estimated peak times of two consecutive diastolic blood pressure series, degrees",
        {30, 15, 11, 4, 348, 347, 341, 333, 332, 285},
        {25, 5, 349, 358, 340, 347, 345, 331, 329, 287},
    });

    // Peak expression phases of circadian genes, heart (x) and liver (y) (Liu et al. 2006).
    out.push_back({
        "gene-peaks",
        AngleUnit::Radians,
        "heart",
        "liver",
        "Liu et al. (2006); phase angles of 38 circadian-related transcripts, radians",
        {0.12,  0.27,  0.29,  0.3,   0.31,  0.34,  0.35,  0.58,  0.62,  1.6,   2.35,  2.62,  2.83,
         -3.06, -2.86, -2.77, -2.69, -2.57, -2.56, -2.45, -2.43, -2.37, -2.18, -2.16, -2.04, -1.61,
         -1.32, -1.22, -0.84, -0.77, -0.38, -0.36, -0.26, -0.19, -0.18, -0.13, -0.12, -0.02},
        {0.61,  0.95,  -2.85, 0.67,  -0.13, 0.08,  2.67,  1.72,  1.45,  1.59,  -2.51, -2.92, 1.42,
         2.74,  2.88,  -3.01, -2.69, 3.05,  -2.35, 2.68,  -2.86, -2.51, 2.69,  -2.11, -1.48, -2.06,
         -2.63, -1.49, -0.83, 0.86,  0.26,  1.5,   1.03,  0.33,  -1.15, -0.21, -0.55, 0.91},
    });
    return out;
}

}  // namespace

std::string_view unit_name(AngleUnit unit) noexcept { return unit == AngleUnit::Degrees ? "deg" : "rad"; }

AngleUnit parse_unit(std::string_view text) {
    if (text == "deg" || text == "degrees") {
        return AngleUnit::Degrees;
    }
    if (text == "rad" || text == "radians") {
        return AngleUnit::Radians;
    }
    throw std::invalid_argument("unknown angle unit '" + std::string(text) + "' (use deg or rad)");
}

Angle angle_from(double value, AngleUnit unit) noexcept {
    return unit == AngleUnit::Degrees ? Angle::from_degrees(value) : Angle(value);
}

PairedSample DatasetDescriptor::sample() const {
    std::vector<Angle> xs;
    std::vector<Angle> ys;
    for (double v : x) xs.push_back(angle_from(v, unit));
    for (double v : y) ys.push_back(angle_from(v, unit));
    return PairedSample(std::move(xs), std::move(ys));
}

std::span<const DatasetDescriptor> embedded_datasets() {
    static const std::vector<DatasetDescriptor> datasets = build_embedded();
    return datasets;
}

const DatasetDescriptor& embedded_dataset(std::string_view id) {
    for (const DatasetDescriptor& d : embedded_datasets()) {
        if (d.id == id) {
            return d;
        }
    }
    throw std::out_of_range("no embedded dataset named '" + std::string(id) + "'");
}

std::string canonical_text(const DatasetDescriptor& dataset) {
    auto row = [](const char* tag, const std::vector<double>& values) {
        std::string s = tag;
        for (std::size_t i = 0; i < values.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", values[i]);
            s += (i == 0 ? " " : ",");
            s += buf;
        }
        return s + "\n";
    };
    return row("x:", dataset.x) + row("y:", dataset.y);
}

std::uint64_t transcription_checksum(const DatasetDescriptor& dataset) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_text(dataset)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace circreg

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circreg/regression.hpp"

namespace circreg {

enum class AngleUnit { Degrees, Radians };

std::string_view unit_name(AngleUnit unit) noexcept;
/// "deg"/"degrees" or "rad"/"radians"; throws std::invalid_argument.
AngleUnit parse_unit(std::string_view text);

/// Convert a raw value in `unit` to a canonical Angle.
Angle angle_from(double value, AngleUnit unit) noexcept;

/// A small paired data set shipped with the library, stored exactly as
/// published (values in their original unit and precision).
struct DatasetDescriptor {
    std::string id;
    AngleUnit unit;
    std::string x_name;
    std::string y_name;
    std::string provenance;
    std::vector<double> x;
    std::vector<double> y;

    PairedSample sample() const;
};

/// wind-milwaukee, blood-pressure and gene-peaks, in that order.
std::span<const DatasetDescriptor> embedded_datasets();

/// Throws std::out_of_range for an unknown id.
const DatasetDescriptor& embedded_dataset(std::string_view id);

/// "x: v1,v2,...\ny: w1,w2,...\n" with values printed as published.
std::string canonical_text(const DatasetDescriptor& dataset);

/// 64-bit FNV-1a of canonical_text.
std::uint64_t transcription_checksum(const DatasetDescriptor& dataset);

}  // namespace circreg

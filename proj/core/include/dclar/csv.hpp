#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dclar/core.hpp"

namespace dclar {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Parses a whole field as a finite double; surrounding spaces allowed.
std::optional<double> parse_double(std::string_view field);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

/// Writes the dataset as "x1,...,xd,y" followed by one row per sample.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Reads the dataset CSV format. Lines starting with '#' are ignored. When
/// `response_optional` is set, a header without a trailing "y" column is
/// accepted and responses are filled with 0 (query files). Bounds are
/// `bounds` when given, else the observed bounding box.
Dataset read_dataset_csv(const std::string& path, bool response_optional = false,
                         std::optional<std::vector<Interval>> bounds = std::nullopt);
Dataset read_dataset_csv(std::istream& in, const std::string& name, bool response_optional = false,
                         std::optional<std::vector<Interval>> bounds = std::nullopt);

}  // namespace dclar

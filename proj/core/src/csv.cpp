#include "dclar/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace dclar {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t k = 0; k < data.dim(); ++k) out << 'x' << (k + 1) << ',';
  out << "y\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.x(i)) out << format_double(v) << ',';
    out << format_double(data.y(i)) << '\n';
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_dataset_csv(out, data);
  if (!out) throw IoError("write failed: " + path);
}

Dataset read_dataset_csv(std::istream& in, const std::string& name, bool response_optional,
                         std::optional<std::vector<Interval>> bounds) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    for (auto f : split_fields(line)) header.emplace_back(f);
    break;
  }
  if (header.empty()) throw InvalidData(name + ": missing header row");
  const bool has_y = header.back() == "y";
  if (!has_y && !response_optional) throw InvalidData(name + ": header must end with column y");
  const std::size_t dim = has_y ? header.size() - 1 : header.size();
  if (dim == 0) throw InvalidData(name + ": no input columns");
  for (std::size_t k = 0; k < dim; ++k) {
    if (header[k] != "x" + std::to_string(k + 1)) {
      throw InvalidData(name + ": unexpected header column '" + header[k] + "'");
    }
  }

  std::vector<double> inputs;
  std::vector<double> responses;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw InvalidData(name + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto v = parse_double(fields[k]);
      if (!v) throw InvalidData(name + ":" + std::to_string(line_no) + ": bad number");
      if (k < dim) {
        inputs.push_back(*v);
      } else {
        responses.push_back(*v);
      }
    }
    if (!has_y) responses.push_back(0.0);
  }
  if (responses.empty()) throw InvalidData(name + ": no data rows");
  if (bounds) {
    return Dataset(dim, std::move(inputs), std::move(responses), std::move(*bounds),
                   BoundsPolicy::kAdvisory);
  }
  return Dataset::with_observed_bounds(dim, std::move(inputs), std::move(responses));
}

Dataset read_dataset_csv(const std::string& path, bool response_optional,
                         std::optional<std::vector<Interval>> bounds) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return read_dataset_csv(in, path, response_optional, std::move(bounds));
}

}  // namespace dclar

#include "tailcone/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "tailcone/error.hpp"

namespace tailcone {

Dataset::Dataset(ConeSpec spec) : spec_(spec) { spec_.validate(); }

Dataset::Dataset(ConeSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() % spec_.dimension != 0) {
    fail(ErrorKind::input, "flat buffer size is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < size(); ++i) check_element(spec_, (*this)[i]);
}

void Dataset::push_back(ElementView x) {
  check_element(spec_, x);
  values_.insert(values_.end(), x.begin(), x.end());
}

Dataset Dataset::scaled(double c) const {
  if (!(c > 0.0)) fail(ErrorKind::input, "scale factor must be positive");
  Dataset out(spec_);
  out.values_ = values_;
  for (double& v : out.values_) v *= c;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Dataset& data, const CsvOptions& options) {
  const std::size_t d = data.dimension();
  if (options.header) {
    for (std::size_t k = 0; k < d; ++k) out << (k ? "," : "") << "x" << k;
    out << '\n';
  }
  std::string line;
  for (std::size_t i = 0; i < data.size(); ++i) {
    line.clear();
    const auto row = data[i];
    for (std::size_t k = 0; k < d; ++k) {
      if (k) line += ',';
      line += format_double(row[k]);
    }
    line += '\n';
    out << line;
  }
}

void write_csv_file(const std::string& path, const Dataset& data, const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  write_csv(out, data, options);
  if (!out) fail(ErrorKind::io, "write to '" + path + "' failed");
}

namespace {

// Parses one row into out. Returns false if a field is not a number at all.
bool parse_row(std::string_view line, std::vector<double>& out) {
  out.clear();
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    auto field = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      return false;
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return true;
}

}  // namespace

Dataset read_csv(std::istream& in, const ConeSpec& spec) {
  Dataset data(spec);
  std::string line;
  std::vector<double> row;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!parse_row(line, row)) {
      if (line_no == 1) continue;  // header
      fail(ErrorKind::input, "row " + std::to_string(line_no) + ": unparseable number");
    }
    try {
      data.push_back(row);
    } catch (const Error& e) {
      fail(e.kind(), "row " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) fail(ErrorKind::io, "read failed");
  return data;
}

Dataset read_csv_file(const std::string& path, const ConeSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
  return read_csv(in, spec);
}

}  // namespace tailcone

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tailcone/cone.hpp"

namespace tailcone {

// Ordered observations of one cone, stored row-major in a flat buffer.
class Dataset {
 public:
  explicit Dataset(ConeSpec spec);
  Dataset(ConeSpec spec, std::vector<double> values);

  const ConeSpec& spec() const { return spec_; }
  std::size_t dimension() const { return spec_.dimension; }
  std::size_t size() const { return values_.size() / spec_.dimension; }
  bool empty() const { return values_.empty(); }

  ElementView operator[](std::size_t i) const {
    return {values_.data() + i * spec_.dimension, spec_.dimension};
  }
  // Rows [first, first + count).
  ElementView rows(std::size_t first, std::size_t count) const {
    return {values_.data() + first * spec_.dimension, count * spec_.dimension};
  }

  void reserve(std::size_t n) { values_.reserve(n * spec_.dimension); }
  void push_back(ElementView x);

  const std::vector<double>& values() const { return values_; }

  // Every coordinate multiplied by c > 0.
  Dataset scaled(double c) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  ConeSpec spec_;
  std::vector<double> values_;
};

struct CsvOptions {
  bool header = false;
};

// Comma separated, one observation per row, '.' decimal separator. Values are
// written in shortest round-trip form so that a write/read cycle is exact.
void write_csv(std::ostream& out, const Dataset& data, const CsvOptions& options = {});
void write_csv_file(const std::string& path, const Dataset& data, const CsvOptions& options = {});

// A first row that does not parse as numbers is treated as a header. NaN and
// infinite coordinates are rejected with the offending row number.
Dataset read_csv(std::istream& in, const ConeSpec& spec);
Dataset read_csv_file(const std::string& path, const ConeSpec& spec);

// Shortest round-trip decimal form of v.
std::string format_double(double v);

}  // namespace tailcone

#include "qdisc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "qdisc/errors.hpp"

namespace qdisc {

namespace {

template <typename T>
T parse_field(std::string_view field, std::size_t line, std::size_t column) {
  T value{};
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw ParseError(line, "column " + std::to_string(column) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

LabeledDataset read_dataset_csv(std::istream& in, bool has_header) {
  LabeledDataset data;
  std::string text;
  std::size_t line_no = 0;
  std::vector<double> row;
  std::size_t width = 0;
  bool pending_blank = false;
  std::size_t blank_line = 0;

  while (std::getline(in, text)) {
    ++line_no;
    if (has_header && line_no == 1) continue;
    if (text.empty()) {
      // Only a trailing blank line is tolerated.
      pending_blank = true;
      blank_line = line_no;
      continue;
    }
    if (pending_blank) throw ParseError(blank_line, "empty line");

    row.clear();
    std::string_view rest(text);
    std::size_t column = 0;
    Label label = 0;
    for (;;) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      ++column;
      if (column == 1) {
        label = parse_field<int>(field, line_no, column);
      } else {
        const double v = parse_field<double>(field, line_no, column);
        if (!std::isfinite(v)) throw ParseError(line_no, "column " + std::to_string(column) + ": not finite");
        row.push_back(v);
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.empty()) throw ParseError(line_no, "no feature columns");
    if (data.size() == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " features, found " +
                                    std::to_string(row.size()));
    }
    data.features.append_row(row);
    data.labels.push_back(label);
  }
  if (data.size() == 0) throw ParseError(std::max<std::size_t>(line_no, 1), "dataset contains no rows");
  return data;
}

LabeledDataset read_dataset_file(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_dataset_csv(in, has_header);
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& data, bool header) {
  if (header) {
    out << "label";
    for (std::size_t c = 0; c < data.dims(); ++c) out << ",f" << (c + 1);
    out << '\n';
  }
  char buf[32];
  for (std::size_t r = 0; r < data.size(); ++r) {
    out << data.labels[r];
    for (double v : data.features.row(r)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::string format_real(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw SchemaError("missing column '" + name + "'");
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace qdisc

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdisc/dataset.hpp"

namespace qdisc {

// Dataset files: UTF-8, comma separated, LF line endings, no quoting.
// Column 1 is an integer label, the remaining columns decimal features. An
// optional header line is skipped when `has_header` is set. Violations throw
// ParseError carrying the 1-based line number.
LabeledDataset read_dataset_csv(std::istream& in, bool has_header);
LabeledDataset read_dataset_file(const std::string& path, bool has_header);

// Features are written with 17 significant digits so a read-back is exact.
void write_dataset_csv(std::ostream& out, const LabeledDataset& data, bool header);

// Result table. Reals are formatted with 9 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws SchemaError
  std::string to_string() const;
};

std::string format_real(double v);

}  // namespace qdisc

#pragma once

#include <string>
#include <vector>

namespace qdisc {

enum class PlotFamily { Theory, MonteCarlo, Accuracy };

// Picks the plot family from a result-CSV header and checks the columns it
// needs; throws SchemaError naming the first missing column.
PlotFamily detect_plot_family(const std::vector<std::string>& header);

// A self-contained matplotlib script that reads `csv_path` and draws
// the curves for the detected family.
std::string plot_script(const std::string& csv_path, const std::vector<std::string>& header);

// Reads the header line of `csv_path` and builds the script.
std::string plot_script_for_file(const std::string& csv_path);

}  // namespace qdisc

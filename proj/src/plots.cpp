#include "qdisc/plots.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdisc/errors.hpp"

namespace qdisc {

namespace {

bool has(const std::vector<std::string>& header, const std::string& name) {
  return std::find(header.begin(), header.end(), name) != header.end();
}

void require(const std::vector<std::string>& header, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (!has(header, n)) throw SchemaError("missing column '" + n + "'");
  }
}

std::string python_string(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\\' || c == '\'') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

PlotFamily detect_plot_family(const std::vector<std::string>& header) {
  if (header.empty()) throw SchemaError("empty header");
  const bool by_gamma = header.front() == "gamma";
  if (!by_gamma) require(header, {"tau"});
  const bool accuracy = std::any_of(header.begin(), header.end(),
                                    [](const std::string& h) { return h.rfind("acc_", 0) == 0; });
  if (accuracy) {
    require(header, {"acc_original"});
    if (!has(header, "acc_binary") && !has(header, "acc_ternary")) {
      throw SchemaError("missing column 'acc_binary' or 'acc_ternary'");
    }
    return PlotFamily::Accuracy;
  }
  if (has(header, "D_empirical") || has(header, "Dq_empirical")) {
    require(header, {"D_empirical", "Dq_empirical"});
    return PlotFamily::MonteCarlo;
  }
  require(header, {"condition_value", "d_original", "d_quantized"});
  return PlotFamily::Theory;
}

std::string plot_script(const std::string& csv_path, const std::vector<std::string>& header) {
  const PlotFamily family = detect_plot_family(header);
  const std::string x = header.front() == "gamma" ? "gamma" : "tau";
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "import csv\n"
    << "import matplotlib\n"
    << "matplotlib.use('Agg')\n"
    << "import matplotlib.pyplot as plt\n\n"
    << "PATH = " << python_string(csv_path) << "\n"
    << "with open(PATH, newline='') as f:\n"
    << "    rows = list(csv.DictReader(f))\n"
    << "col = lambda name: [float(r[name]) for r in rows]\n"
    << "x = col('" << x << "')\n\n";
  switch (family) {
    case PlotFamily::Theory:
      s << "fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))\n"
        << "left.plot(x, col('condition_value'), label='condition')\n"
        << "left.axhline(0.0, color='k', lw=0.8)\n"
        << "left.set_xlabel('tau'); left.legend()\n"
        << "right.plot(x, col('d_original'), label='original')\n"
        << "right.plot(x, col('d_quantized'), label='quantized')\n"
        << "right.set_xlabel('tau'); right.set_ylabel('discrimination'); right.legend()\n";
      break;
    case PlotFamily::MonteCarlo:
      s << "fig, ax = plt.subplots(figsize=(6, 4))\n"
        << "ax.plot(x, col('D_empirical'), label='original')\n"
        << "ax.plot(x, col('Dq_empirical'), label='quantized')\n"
        << "ax.set_xlabel('tau'); ax.set_ylabel('discrimination (empirical)'); ax.legend()\n";
      break;
    case PlotFamily::Accuracy: {
      const std::string q = has(header, "acc_binary") ? "acc_binary" : "acc_ternary";
      s << "fig, ax = plt.subplots(figsize=(6, 4))\n"
        << "ax.plot(x, col('" << q << "'), marker='.', label='" << q.substr(4) << "')\n"
        << "ax.axhline(col('acc_original')[0], color='k', ls='--', label='original')\n"
        << "ax.set_xlabel('" << x << "'); ax.set_ylabel('accuracy'); ax.legend()\n";
      break;
    }
  }
  s << "fig.tight_layout()\n"
    << "fig.savefig(PATH.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return s.str();
}

std::string plot_script_for_file(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw SchemaError("cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + csv_path + "' is empty");
  std::vector<std::string> header;
  std::stringstream ss(line);
  for (std::string field; std::getline(ss, field, ',');) header.push_back(field);
  return plot_script(csv_path, header);
}

}  // namespace qdisc

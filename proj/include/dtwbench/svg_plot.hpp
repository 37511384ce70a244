#ifndef DTWBENCH_SVG_PLOT_HPP
#define DTWBENCH_SVG_PLOT_HPP

#include <string>

namespace dtwbench {

// Renders a benchmark CSV (write_report_csv schema) as a standalone SVG:
// one polyline per algorithm family, log-scale time axis. The x axis is the
// sweep parameter (w as a percent, r as cells), or N when the report sweeps
// lengths instead. Output is byte-deterministic for identical input.
// Throws ParseError on a schema mismatch or when there are no data rows.
std::string render_csv_plot(const std::string& csv_text);

}  // namespace dtwbench

#endif  // DTWBENCH_SVG_PLOT_HPP

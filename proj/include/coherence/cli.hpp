#pragma once

// Command-line front end: figure-data tables, single-state measurements and
// optimizer runs. The functions here are the testable core; tools/coherence.cpp
// only forwards argv to run().

#include <complex>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "coherence/measures.hpp"

namespace coherence::cli {

std::string_view version();

struct Grid {
  double start = 0.05;
  double stop = 5.0;
  double step = 0.05;

  std::vector<double> points() const;
};

/// "start:stop:step"
Grid parse_grid(std::string_view text);

enum class Format { csv, json };

struct RunConfig {
  double tol = 1e-12;
  measures::LogBase log_base = measures::LogBase::natural;
  Grid grid;
  std::string output_path;  // empty: stdout
  Format format = Format::csv;
};

void validate(const RunConfig& config);

struct StateSpec {
  std::string name;
  // key, value, and the offset of the key within the original text
  struct Param {
    std::string key;
    std::string value;
    std::size_t position = 0;
  };
  std::vector<Param> params;
};

/// name:key=value[,key=value...]
StateSpec parse_state_spec(std::string_view text);
/// Decimal real or complex "re+imi", "re-imi", "imi".
std::complex<double> parse_complex(std::string_view text);

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string config_comment(const RunConfig& config);
std::string format_real(double x);
std::string render(const Table& table, const RunConfig& config);

Table fig1a(const RunConfig& config, double nbar);
Table fig1b(const RunConfig& config);
Table fig1c(const RunConfig& config);
Table fig2a(const RunConfig& config, unsigned d_max);
Table fig2b(const RunConfig& config);

struct MeasureOptions {
  bool g2 = false;
  bool l1 = false;
  bool covariance = false;
};

nlohmann::ordered_json measure(std::string_view state_spec, const RunConfig& config,
                               const MeasureOptions& options = {});
nlohmann::ordered_json optimize(std::string_view problem_spec, const RunConfig& config,
                                bool with_distribution = false);

/// Writes to config.output_path or, when empty, to `out`.
void emit(const std::string& text, const RunConfig& config, std::ostream& out);

int run(int argc, char** argv);

}  // namespace coherence::cli

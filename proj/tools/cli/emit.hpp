#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skop/poly.hpp"
#include "skop/regularization.hpp"

namespace skop::cli {

using nlohmann::json;

/// Result record {command, params, value_re, value_im, error, trace?, verdict?}.
json make_record(const std::string& command, json params, Complex value, double error);
void attach_trace(json& record, const std::vector<TracePoint>& trace);

/// Writes records as JSON lines or as a CSV table (t_re, t_im, value_re,
/// value_im, error; t columns taken from params when present).
class Emitter {
 public:
  Emitter(const std::string& path, const std::string& format);

  void emit(const json& record);
  void flush();

 private:
  std::ofstream file_;
  std::ostream* out_;
  bool csv_;
  bool header_written_ = false;
};

/// Plot-data table with a header row; a no-op when path is empty.
class PlotTable {
 public:
  PlotTable(const std::string& path, const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ofstream file_;
  bool active_;
};

}  // namespace skop::cli

#include "emit.hpp"

#include <iostream>
#include <sstream>

namespace skop::cli {

namespace {

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string csv_field(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key) || !params[key].is_number()) return "";
  return number(params[key].get<double>());
}

}  // namespace

json make_record(const std::string& command, json params, Complex value, double error) {
  json r;
  r["command"] = command;
  r["params"] = std::move(params);
  r["value_re"] = value.real();
  r["value_im"] = value.imag();
  r["error"] = error;
  return r;
}

void attach_trace(json& record, const std::vector<TracePoint>& trace) {
  json arr = json::array();
  for (const auto& p : trace) arr.push_back({{"delta", p.delta}, {"value_re", p.value.real()}, {"value_im", p.value.imag()}});
  record["trace"] = std::move(arr);
}

Emitter::Emitter(const std::string& path, const std::string& format) : out_(&std::cout), csv_(format == "csv") {
  if (!path.empty()) {
    file_.open(path);
    require(file_.good(), "cannot open output file '" + path + "'");
    out_ = &file_;
  }
}

void Emitter::emit(const json& record) {
  if (!csv_) {
    *out_ << record.dump() << '\n';
    return;
  }
  if (!header_written_) {
    *out_ << "t_re,t_im,value_re,value_im,error\n";
    header_written_ = true;
  }
  const json& params = record["params"];
  *out_ << csv_field(params, "t_re") << ',' << csv_field(params, "t_im") << ','
        << number(record["value_re"].get<double>()) << ',' << number(record["value_im"].get<double>()) << ','
        << number(record["error"].get<double>()) << '\n';
}

void Emitter::flush() { out_->flush(); }

PlotTable::PlotTable(const std::string& path, const std::vector<std::string>& columns) : active_(!path.empty()) {
  if (!active_) return;
  file_.open(path);
  require(file_.good(), "cannot open plot file '" + path + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) file_ << (i ? "," : "") << columns[i];
  file_ << '\n';
}

void PlotTable::row(const std::vector<double>& values) {
  if (!active_) return;
  for (std::size_t i = 0; i < values.size(); ++i) file_ << (i ? "," : "") << number(values[i]);
  file_ << '\n';
}

}  // namespace skop::cli

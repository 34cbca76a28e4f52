#include "ravopt/harness/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace ravopt::harness {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceHeader << '\n';
  for (const StepRecord& r : trace.records) {
    out << r.iter_index << ',' << r.epoch << ',' << to_string(r.kind) << ',' << format_double(r.value_gap) << ','
        << format_double(r.grad_norm) << ',' << format_double(r.stepsize) << ',';
    if (r.dist_solution) out << format_double(*r.dist_solution);
    out << ',';
    if (r.dist_ravine) out << format_double(*r.dist_ravine);
    out << '\n';
  }
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  write_trace_csv(out, trace);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << contents;
}

}  // namespace ravopt::harness

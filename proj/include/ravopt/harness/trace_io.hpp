#pragma once

#include "ravopt/trace.hpp"

#include <iosfwd>
#include <string>

namespace ravopt::harness {

inline constexpr const char* kTraceHeader =
    "iter,epoch,kind,value_gap,grad_norm,stepsize,dist_solution,dist_ravine";

// 17 significant digits, empty cells for absent optional columns.
std::string format_double(double x);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_trace_csv(const std::string& path, const RunTrace& trace);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace ravopt::harness

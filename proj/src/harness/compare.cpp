#include "ravopt/harness/compare.hpp"

#include "ravopt/harness/trace_io.hpp"

#include <filesystem>
#include <iomanip>
#include <sstream>

namespace ravopt::harness {

namespace fs = std::filesystem;

const ComparisonRow& ComparisonTable::row(Method m) const {
  for (const auto& r : rows)
    if (r.method == m) return r;
  throw Error(ErrorCode::InvalidArgument, "method not in table");
}

std::string ComparisonTable::to_csv() const {
  std::ostringstream out;
  out << "method,final_gap,best_gap,gradient_evaluations,slope,r2,error\n";
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << format_double(r.final_gap) << ',' << format_double(r.best_gap) << ','
        << r.gradient_evaluations << ',' << (r.slope ? format_double(*r.slope) : "") << ','
        << (r.r2 ? format_double(*r.r2) : "") << ',' << (r.error ? "\"" + *r.error + "\"" : "") << '\n';
  }
  return out.str();
}

std::string ComparisonTable::to_text() const {
  std::ostringstream out;
  out << std::left << std::setw(13) << "method" << std::setw(14) << "final gap" << std::setw(14) << "best gap"
      << std::setw(10) << "grads" << std::setw(12) << "slope" << "R^2\n";
  out << std::scientific << std::setprecision(3);
  for (const auto& r : rows) {
    out << std::setw(13) << to_string(r.method) << std::setw(14) << r.final_gap << std::setw(14) << r.best_gap
        << std::setw(10) << r.gradient_evaluations;
    if (r.slope)
      out << std::setw(12) << *r.slope << std::fixed << std::setprecision(4) << *r.r2 << std::scientific
          << std::setprecision(3);
    else
      out << std::setw(12) << "-" << "-";
    if (r.error) out << "  (" << *r.error << ")";
    out << '\n';
  }
  return out.str();
}

ComparisonTable compare_methods(const ExperimentConfig& config) {
  // the method field, if any, is ignored: every method runs
  ExperimentConfig base = config;
  base.method.reset();
  validate(base, false);
  const bool with_lb = base.J.has_value() && base.f_lb.has_value();
  if (with_lb && base.I % *base.J != 0)
    throw Error(ErrorCode::ConfigInvalid, "J: must divide I so that every method gets the same budget");

  const ProblemBundle bundle = build_problem(base.problem, base.problem_params);
  ComparisonTable table;
  table.initial_point = initial_point(bundle, base);

  std::vector<Method> methods = {Method::gd, Method::polyak, Method::gdpolyak};
  if (with_lb) methods.push_back(Method::gdpolyak_lb);
  for (Method m : methods) {
    ExperimentConfig c = base;
    c.method = m;
    if (m == Method::gdpolyak_lb) {
      c.I = base.I / *base.J;
    } else {
      c.J.reset();
      c.f_lb.reset();
    }
    if (!base.out_dir.empty()) c.out_dir = (fs::path(base.out_dir) / std::string(to_string(m))).string();
    const ExperimentResult res = run_experiment(c, bundle, table.initial_point);
    ComparisonRow row;
    row.method = m;
    row.best_gap = res.trace.best_value - res.trace.gap_reference;
    row.final_gap = res.trace.epochs.empty() ? row.best_gap : res.trace.epochs.back().end_gap;
    row.gradient_evaluations = res.trace.gradient_evaluations;
    if (res.fit) {
      row.slope = res.fit->slope;
      row.r2 = res.fit->r2;
    }
    row.error = res.error;
    table.rows.push_back(row);
  }
  if (!base.out_dir.empty()) {
    fs::create_directories(base.out_dir);
    write_text_file((fs::path(base.out_dir) / "comparison.csv").string(), table.to_csv());
    write_text_file((fs::path(base.out_dir) / "comparison.txt").string(), table.to_text());
  }
  return table;
}

}  // namespace ravopt::harness

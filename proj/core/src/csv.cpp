#include <ostream>
#include <sstream>

#include "imcf/trace.hpp"

namespace imcf {

void write_trace_csv(std::ostream& os, const FlowTrace& trace, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
  }
  os << kTraceCsvHeader << '\n';
  const auto old = os.precision(17);
  for (const auto& r : trace.records) {
    os << r.t << ',' << r.area << ',' << r.anorm << ',' << r.I << ',' << r.J << ',' << r.K << ','
       << r.L << ',' << r.jk_norm << ',' << r.af_deficit << ',' << r.brendle_deficit << ','
       << r.min_h << ',' << r.max_h << ',' << r.mean_wh << ',' << r.max_grad_v << ','
       << r.max_umbilicity << ',' << r.minkowski_resid << ',' << r.w_range << '\n';
  }
  os.precision(old);
}

}  // namespace imcf

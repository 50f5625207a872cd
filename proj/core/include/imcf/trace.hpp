#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imcf {

/// One sample of a flow, all quantities evaluated on the same snapshot.
struct TraceRecord {
  double t = 0.0;
  double area = 0.0;
  double anorm = 0.0;  ///< area / theta
  double I = 0.0;
  double J = 0.0;
  double K = 0.0;
  double L = 0.0;
  double jk_norm = 0.0;  ///< (J - K) / anorm^{n/(n-1)}
  double af_deficit = 0.0;
  double brendle_deficit = 0.0;
  double min_h = 0.0;
  double max_h = 0.0;
  double mean_wh = 0.0;  ///< grid mean of W / H
  double max_grad_v = 0.0;
  double max_umbilicity = 0.0;
  double minkowski_resid = 0.0;
  double w_range = 0.0;  ///< max - min of (e^u + 1) e^{-t/(n-1)}
  double mean_rescaled_u = 0.0;  ///< mean of u - t/(n-1); not part of the CSV schema
};

struct FlowTrace {
  int n = 3;
  int epsilon = 0;
  double theta = 0.0;
  double spacing = 0.0;  ///< grid spacing, 0 for symmetric runs
  double record_dt = 0.0;
  std::vector<TraceRecord> records;
};

inline constexpr const char* kTraceCsvHeader =
    "t,area,anorm,I,J,K,L,jk_norm,af_deficit,brendle_deficit,minH,maxH,mean_WH,max_grad_v,"
    "max_umbilicity,minkowski_resid,w_range";

/// One row per record in full double precision, preceded by `comment` lines
/// (each prefixed with '#') and the header line.
void write_trace_csv(std::ostream& os, const FlowTrace& trace, const std::string& comment = {});

}  // namespace imcf

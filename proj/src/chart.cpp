#include "sdgeom/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace sdgeom {

int chart_dimension(Chart c) {
  switch (c) {
    case Chart::R4_CARTESIAN:
    case Chart::R1xR3:
    case Chart::PRODUCT_RHO_STEREO:
    case Chart::S3_AMBIENT:
      return 4;
    case Chart::R3_CARTESIAN:
    case Chart::S3_STEREO:
      return 3;
    case Chart::S2_STEREO:
      return 2;
  }
  return 0;
}

std::string_view chart_name(Chart c) {
  switch (c) {
    case Chart::R4_CARTESIAN: return "R4_CARTESIAN";
    case Chart::R1xR3: return "R1xR3";
    case Chart::PRODUCT_RHO_STEREO: return "PRODUCT_RHO_STEREO";
    case Chart::S3_AMBIENT: return "S3_AMBIENT";
    case Chart::R3_CARTESIAN: return "R3_CARTESIAN";
    case Chart::S2_STEREO: return "S2_STEREO";
    case Chart::S3_STEREO: return "S3_STEREO";
  }
  return "?";
}

Chart chart_from_name(std::string_view name) {
  for (Chart c : {Chart::R4_CARTESIAN, Chart::R1xR3, Chart::PRODUCT_RHO_STEREO, Chart::S3_AMBIENT,
                  Chart::R3_CARTESIAN, Chart::S2_STEREO, Chart::S3_STEREO}) {
    if (chart_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown chart '" + std::string(name) + "'");
}

void validate_point(const ChartPoint& p) {
  for (int i = p.dim(); i < kMaxDim; ++i) {
    if (p[i] != 0.0) throw std::invalid_argument("coordinate beyond chart dimension is set");
  }
  if (p.chart == Chart::S3_AMBIENT) {
    double r2 = 0.0;
    for (double x : p.coords) r2 += x * x;
    if (std::abs(std::sqrt(r2) - p.radius) > 1e-12 * p.radius) {
      throw std::invalid_argument("S3_AMBIENT point is off the sphere");
    }
  }
  if (p.radius <= 0.0) throw std::invalid_argument("non-positive radius");
}

CoordJets seed_coordinates(const ChartPoint& p) {
  CoordJets out;
  for (int i = 0; i < kMaxDim; ++i) {
    out[static_cast<std::size_t>(i)] = i < p.dim() ? Jet2::variable(p[i], i) : Jet2(0.0);
  }
  return out;
}

}  // namespace sdgeom

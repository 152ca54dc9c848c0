#pragma once

#include "dyck/geodesic.hpp"

namespace dyck::detail {

/// Unit vector at local angle `a` (ccw) from the edge corner -> corner+1.
Vec2 corner_direction(const ConeSurface& s, int face, int corner, double a);
/// Local angle of direction d inside the corner, in [0, corner angle].
double corner_local_angle(const ConeSurface& s, int face, int corner, Vec2 d);

struct TraceEnd {
  int vertex = -1;          // vertex reached exactly at the end, if any
  double in_angle = 0.0;    // its angular coordinate of the backward direction
  int face = -1;
  Vec2 point{};
  Vec2 direction{};
};

/// Traces from a face point (entry_slot >= 0 when the point lies on that
/// slot) or from a vertex corner, appending to `path`. Vertices hit before
/// the end are passed straight. A vertex hit within `snap` of the end stops
/// the trace there.
TraceEnd trace_from(const ConeSurface& s, int face, Vec2 p, Vec2 d, int entry_slot, int start_corner, double length,
                    GeodesicPath& path, double snap = 1e-9);

}  // namespace dyck::detail

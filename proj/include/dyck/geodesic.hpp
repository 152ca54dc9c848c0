#pragma once

#include "dyck/surface.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dyck {

class GeodesicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Straight piece of a path inside one face, in face-local coordinates.
struct PathSegment {
  int face = -1;
  Vec2 entry{};
  Vec2 exit{};
  int exit_slot = -1;  // slot crossed at `exit`, or -1 at a vertex or path end
};

/// Passage of a path through a vertex after segment `segment`. Angles are
/// vertex angular coordinates of the incoming (pointing back) and outgoing
/// directions; `left` + `right` is the cone angle.
struct ConeIncidence {
  int vertex = -1;
  int segment = -1;
  double in_angle = 0.0;
  double out_angle = 0.0;
  double left = 0.0;
  double right = 0.0;
  bool singular = false;
};

enum class GeodesicKind { soul, saddle_chain };

struct GeodesicPath {
  std::vector<PathSegment> segments;
  std::vector<ConeIncidence> incidences;
  double length = 0.0;
  bool closed = false;
  GeodesicKind kind = GeodesicKind::saddle_chain;
  bool one_sided = false;  // core of a Moebius band

  std::vector<int> faces() const;
  std::vector<int> cone_points() const;  // singular incidences, in order
};

std::string to_string(GeodesicKind k);

/// Machine check of the path invariants: segments match across gluings to
/// `tol`, side angles at cone points are >= pi - tol, and the length is the
/// sum of segment lengths. Returns an empty string when all hold.
std::string check_local_geodesic(const ConeSurface& s, const GeodesicPath& g, double tol = 1e-9);

struct EnumerationOptions {
  double l_max = 1.0;
  long budget = 20'000'000;  // corridor and window steps
  int threads = 1;
};

struct EnumerationResult {
  std::vector<GeodesicPath> geodesics;  // sorted by length
  bool partial = false;                 // budget exhausted
  long steps = 0;
};

/// Closed geodesics of length <= l_max: cores of flat cylinders and Moebius
/// bands found by line-corridor unfolding, and closed chains of saddle
/// connections through at least one singular vertex.
EnumerationResult enumerate_closed_geodesics(const ConeSurface& s, const EnumerationOptions& opt);

struct SystoleResult {
  bool found = false;
  bool partial = false;
  double length = std::numeric_limits<double>::infinity();
  GeodesicPath path;
};

/// Shortest closed geodesic; throws GeodesicError on a surface with
/// boundary or with a cone angle below 2 pi.
SystoleResult systole(const ConeSurface& s, const EnumerationOptions& opt);

/// Straight trace from a face point in a face-local direction, continuing
/// straight (side angle pi) through vertices. Stops after `length`.
GeodesicPath trace_line(const ConeSurface& s, SurfacePoint start, Vec2 direction, double length);

std::string geodesics_to_json(const std::vector<GeodesicPath>& gs);

// --- distance fields --------------------------------------------------------

/// Source of a distance field: vertices, face points, and mesh edges (the
/// edges form a curve; distance is to their union).
struct DistanceSource {
  std::vector<int> vertices;
  std::vector<SurfacePoint> points;
  std::vector<EdgeRef> edges;
};

/// Exact distance field on a flat cone surface from window propagation up to
/// radius `radius`; values beyond are +infinity.
class DistanceField {
 public:
  DistanceField(const ConeSurface& s, const DistanceSource& src, double radius, long budget = 50'000'000);
  ~DistanceField();
  DistanceField(DistanceField&&) noexcept;
  DistanceField& operator=(DistanceField&&) noexcept;

  double at(int face, Vec2 local) const;
  double at_vertex(int v) const;
  double radius() const;
  bool partial() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct DistanceResult {
  bool finite = false;
  double distance = std::numeric_limits<double>::infinity();
};

DistanceResult point_distance(const ConeSurface& s, SurfacePoint x, SurfacePoint y, double l_max);
DistanceResult vertex_distance(const ConeSurface& s, int v, int w, double l_max);

struct AreaEstimate {
  double value = 0.0;     // Richardson-extrapolated
  double coarse = 0.0;    // at mesh_h
  double fine = 0.0;      // at mesh_h / 2
  double error = 0.0;     // |fine - coarse|
  double mesh_h = 0.0;
};

/// Area of {x : d(x, C) <= r} for C the marked soul edges (or the given
/// source), from the exact field sampled on a grid of spacing mesh_h per
/// face with linear interpolation, extrapolated over mesh_h and mesh_h / 2.
AreaEstimate sublevel_area(const ConeSurface& s, const DistanceSource& c, double r, double mesh_h);
AreaEstimate sublevel_area(const ConeSurface& s, double r, double mesh_h);
/// Single-resolution area at grid spacing mesh_h.
double sublevel_area_at(const ConeSurface& s, const DistanceField& f, double r, double mesh_h);

struct BoundarySegment {
  int face = -1;
  Vec2 a{};
  Vec2 b{};
  int other_center = -1;
};

struct VoronoiCell {
  int center = -1;  // vertex id
  double area = 0.0;
  std::vector<BoundarySegment> boundary;
};

struct VoronoiResult {
  std::vector<VoronoiCell> cells;
  double excluded_area = 0.0;  // collar faces
  /// vertices equidistant (to tol) from two or more centers
  std::vector<int> equidistant_vertices;
};

/// Nearest-center cells from exact per-center fields on a sampling grid;
/// faces listed as collar faces in the marks are excluded when
/// `exclude_collar` is set.
VoronoiResult voronoi_cells(const ConeSurface& s, const std::vector<int>& centers, double mesh_h,
                            bool exclude_collar = true, double radius = 2.0);

struct HalfPlane {
  double distance = 0.0;  // d_i; the constraint is <x, u_i> <= d_i / 2
  double angle = 0.0;     // direction of u_i
};

struct ComparisonPolygon {
  bool bounded = false;
  std::vector<Vec2> vertices;
  double area = 0.0;
};

ComparisonPolygon comparison_polygon(const std::vector<HalfPlane>& constraints);

/// Constraints at a smooth center vertex, angles in its angular coordinate:
/// straight segments of length d <= radius to any center (including the
/// center itself), and perpendiculars of length d/2 to the boundary of the
/// collar faces when `exclude_collar` is set.
/// Geodesics may bend at cone points of angle > 2 pi; the angle is then the
/// initial direction at the center. With radius <= 0 the radius is just
/// above twice the covering radius, which leaves the polygon unchanged.
std::vector<HalfPlane> center_constraints(const ConeSurface& s, int center, const std::vector<int>& centers,
                                          double radius = 0.0, bool exclude_collar = true);

/// Upper estimate of max_x min_i d(x, c_i): field maximum over a sampling
/// grid of spacing mesh_h plus mesh_h.
double covering_radius(const ConeSurface& s, const std::vector<int>& centers, double mesh_h = 0.02);

}  // namespace dyck

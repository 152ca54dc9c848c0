#pragma once

#include "dyck/surface.hpp"

#include <vector>

namespace dyck {

/// Orientable double cover. Sheet 0 keeps the faces as they are; sheet 1
/// holds their mirror images at indices n..2n-1.
ConeSurface orientation_double_cover(const ConeSurface& s);

/// Paths of mesh edges; each path is a chain of edge slots in which
/// consecutive edges share a vertex.
struct CutGraph {
  std::vector<std::vector<EdgeRef>> paths;
};

struct CutResult {
  ConeSurface surface;
  std::vector<Gluing> removed;
};

/// Removes the gluings along the graph. Throws SurfaceError when a path
/// is broken, an edge is used twice or lies on the boundary, paths cross
/// away from their endpoints, or the graph has a vertex of degree one.
CutResult cut_along_graph(const ConeSurface& s, const CutGraph& g);
/// Inverse of cut_along_graph.
ConeSurface reglue(const CutResult& cut);

/// The graph of the three long sides through the Weierstrass points,
/// each a path from p through a Weierstrass point to q.
CutGraph weierstrass_graph(const ConeSurface& extremal);

/// Lifts of every edge of `g` to orientation_double_cover(s), one path per
/// lifted edge.
CutGraph lift_to_double_cover(const ConeSurface& s, const CutGraph& g);

/// Subdivides every face into n^2 similar triangles. Vertex marks follow
/// the original vertices; marked edges and faces follow their pieces.
ConeSurface refine(const ConeSurface& s, int n);

/// Face relabeling: face f of the input becomes face perm[f], with its
/// corners rotated by `rotate` positions.
ConeSurface relabel_faces(const ConeSurface& s, const std::vector<int>& perm, int rotate = 0);

}  // namespace dyck

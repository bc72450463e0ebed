#pragma once

// Completion of an embedded planar graph to a triangulation: every face is
// filled with zigzag chords when that stays simple, and otherwise with a
// ring of fresh vertices whose band triangles and inner zigzag are always
// conflict-free.  The input graph survives as a subgraph and both vertex
// count and max degree grow by bounded factors.

#include "pll/graph.hpp"

namespace pll {

struct ZigzagResult {
  PlanarGraph graph;
  int added_vertices = 0;
  int max_degree_before = 0;
  int max_degree_after = 0;
  int zigzag_faces = 0;  // faces finished by chords alone
  int ring_faces = 0;    // faces that needed an inner ring
};

// Triangulates every face of a simple connected planar embedding.  Faces
// are processed in trace order; each face first attempts the two-pointer
// zigzag (anchored at its smallest vertex), falling back to ring insertion
// when the face walk repeats a vertex or a chord would duplicate an
// existing edge.  Throws when the rotation system fails the Euler check.
ZigzagResult triangulate_zigzag(const PlanarGraph& g);

}  // namespace pll

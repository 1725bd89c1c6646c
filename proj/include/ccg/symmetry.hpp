#pragma once

// Congruence-group classification of compact convex regions. classify()
// derives candidates from the boundary structure (non-smooth points, cycle
// pair axes) and verifies them by Hausdorff residual; oracle_classify()
// sweeps the isometry families directly (grid + simplex descent) and is the
// independent cross-check.

#include <optional>
#include <vector>

#include "ccg/kernels.hpp"
#include "ccg/regions.hpp"

namespace ccg {

enum class SymmetryClass {
    Trivial,
    CentralOnly,
    AxialOnly,
    CentralAndAxial,
    Rotational,
    FullDiskGroup,
};

const char* to_string(SymmetryClass c);

enum class CongruenceKind { Rotation, PointReflection, Reflection };

struct Congruence {
    Isometry iso;
    CongruenceKind kind;
    std::optional<Point> fixed_point;  // rotations and point reflections
    std::optional<Cycle> axis;         // reflections
    double angle = 0.0;                // rotation angle in (0, 2 pi)
    double residual = 0.0;             // Hausdorff residual of the witness
};

struct SymmetryReport {
    SymmetryClass classification = SymmetryClass::Trivial;
    std::optional<Point> centre;
    std::vector<Cycle> axes;
    int rotation_order = 1;  // 1 trivial, 2 central, k finite, -1 continuous
    std::vector<Congruence> witnesses;
    std::vector<Congruence> ambiguous;  // residual in (tol, 2 tol) x diameter
    double tol = 0.0;
    double diameter = 0.0;
};

// Candidate congruences read off the boundary: the three two-vertex
// candidates, vertex-sequence alignments for V >= 3, circumcentre-based
// candidates for smooth boundaries, plus cycle-pair axes.
std::vector<Congruence> candidate_congruences(const ConvexRegion& r);

SymmetryReport classify(const ConvexRegion& r, double tol = 0.0);
SymmetryReport oracle_classify(const ConvexRegion& r, double tol = 0.0);

// The axis construction for a pair of cycles bounding a compact intersection:
// through two circle centres; through a centre orthogonal to a base line;
// common perpendicular of ultraparallel base lines. nullopt when none applies.
std::optional<Cycle> axis_for_cycle_pair(const Cycle& a, const Cycle& b);

// Minimax centre of a compact region (centre of the smallest enclosing disk).
Point circumcentre(const ConvexRegion& r);

}  // namespace ccg

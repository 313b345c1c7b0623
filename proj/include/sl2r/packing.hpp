#pragma once

#include <array>
#include <string>
#include <vector>

#include "sl2r/quadrature.hpp"
#include "sl2r/tiling.hpp"

namespace sl2r {

enum class LimitingConstraint { VertexDistance, HalfHeight, ScrewImage };

const char* limiting_constraint_name(LimitingConstraint c);

struct PackingResult {
  TilingParams params;
  // Candidate radii: distance to the vertex fibre, half the prism
  // height, and half the distance to the screw image of the centre.
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double r1_halved = 0.0;  // diagnostic alternative reading of r1
  double rho_opt = 0.0;
  double vol_ball = 0.0;
  double vol_prism = 0.0;
  double density = 0.0;
  LimitingConstraint limiting_constraint = LimitingConstraint::VertexDistance;
  double distance_residual = 0.0;  // solver residual behind r3
};

std::array<double, 3> rho_candidates(const PrismData& d);

PackingResult pack(const TilingParams& params, const QuadratureSpec& spec = {});

struct SweepCell {
  int p = 0, q = 0;
  bool ok = false;
  std::string skip_reason;  // set when the cell was not computed
  PackingResult result;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // sorted by (p, q)
  int argmax_index = -1;         // densest computed cell, -1 if none
};

// Evaluates pack() over the (p, q) rectangle; invalid pairs are recorded
// with a skip reason, per-cell errors do not abort the sweep. Cells are
// independent and run on `jobs` threads with deterministic results. When
// cache_path is non-empty, results are read from / written to that JSON
// file keyed by (p, q) and the quadrature spec.
SweepResult sweep(int p_min, int p_max, int q_min, int q_max,
                  const QuadratureSpec& spec = {}, int jobs = 1,
                  const std::string& cache_path = "");

}  // namespace sl2r

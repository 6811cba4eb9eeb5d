#pragma once

#include "cliffib/clifford.hpp"
#include "cliffib/quadratic_form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cliffib {

enum class ComponentKind { CLIFFORD_PART, BASE_TWIST, MODULE_BK };

struct SODComponent {
  ComponentKind kind;
  long twist = 0;  // BASE_TWIST(k) / MODULE_BK(k)
  std::string description;
};

/// Shape of a semiorthogonal decomposition: an ordered component list plus
/// counting data. Facts here are of two kinds, kept separate in reports:
/// CERTIFIED values come out of exact computations, THEOREM-SHAPE text
/// restates the categorical statement without machine-checking it.
struct SODReport {
  std::string statement;
  std::string ambient;
  std::vector<SODComponent> components;
  std::optional<Index> expected_exceptional_count;
  bool equivalence = false;
  std::optional<Index> curve_genus;
  std::optional<Index> branch_points;
  std::string cover_description;
  std::string lefschetz_description;
  std::vector<std::string> caveats;
};

/// Quadric fibration of relative dimension n-2: the Clifford component
/// followed by n-2 twisted base components.
SODReport fibration_sod(Index n, const std::string& base_description,
                        bool nondegenerate_point_base);

/// Complete intersection of r quadrics in P^{n-1} against the Clifford side,
/// in the regime decided by 2r vs n; r = n/2 collapses to an equivalence.
SODReport intersection_sod(Index n, Index r);

/// Rank of the Grothendieck group of a smooth quadric of this dimension;
/// independent classical count used to cross-check exceptional numbers.
Index kgroup_rank_smooth_quadric(Index dim);

struct PushforwardRow {
  long m = 0;
  std::string kind;  // "A_m" | "ZERO" | "A*_{2-m-n} (x) det E (x) L [2-n]"
  Integer dimension;
  Index cohomological_degree = 0;
};

/// Pushforward of the relative twists, by the three-case formula.
std::vector<PushforwardRow> pushforward_table(Index n, long m_lo, long m_hi);

struct PointCertificate {
  std::vector<Rational> point;
  Index corank = 0;
  bool quotient = false;  // report concerns the quotient by d
  Rational d_squared;
  AlgebraStructureReport structure;
};

struct CentralReductionReport {
  Index n = 0;
  MultiPoly discriminant;
  std::optional<bool> simple_degenerations;
  std::string degeneration_witness;
  std::string cover_description;   // even n: double cover data; odd n: stack text
  std::string pencil_conclusion;   // dichotomy for one-parameter families
  std::vector<PointCertificate> certificates;
};

/// Fiberwise certificates for the central reduction: at corank 0 the
/// structure of the chosen Clifford part, at corank 1 the quotient by d;
/// corank >= 2 sample points are rejected (CORANK2_POINT).
CentralReductionReport central_reduction_report(
    const QuadraticForm& q, const std::vector<std::vector<Rational>>& sample_points);

}  // namespace cliffib

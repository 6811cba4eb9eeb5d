#include "cliffib/sod.hpp"

#include "cliffib/linalg.hpp"
#include "cliffib/presentation.hpp"

#include <sstream>

namespace cliffib {

namespace {

std::string lefschetz_text(Index n) {
  const Index ix = (n + 1) / 2;
  std::ostringstream os;
  os << "Lefschetz blocks for the double Veronese embedding: A_0 = ... = A_" << (ix - 2)
     << " = <O(-1), O>, A_" << (ix - 1) << " = "
     << (n % 2 == 0 ? "<O(-1), O>" : "<O(-1)>") << ", i = " << ix;
  return os.str();
}

}  // namespace

SODReport fibration_sod(Index n, const std::string& base_description,
                        bool nondegenerate_point_base) {
  if (n < 2) throw input_error("BAD_N", "fibration shape needs n >= 2");
  SODReport rep;
  rep.statement = "derived category of a flat quadric fibration of relative dimension " +
                  std::to_string(n - 2);
  rep.ambient = "D^b(X)";
  rep.components.push_back(
      {ComponentKind::CLIFFORD_PART, 0,
       "D^b(" + base_description + ", B0), modules over the even Clifford algebra"});
  for (Index k = 1; k <= n - 2; ++k)
    rep.components.push_back({ComponentKind::BASE_TWIST, k,
                              "p^* D^b(" + base_description + ") (x) O(" + std::to_string(k) + ")"});
  if (nondegenerate_point_base) {
    // each twist contributes one exceptional object; the Clifford part
    // contributes the simple blocks of the even algebra
    rep.expected_exceptional_count = (n - 2) + (n % 2 == 0 ? 2 : 1);
  }
  rep.caveats.push_back(
      "component list and counts are theorem-shape data; the categorical statement itself is "
      "not machine-checked");
  return rep;
}

SODReport intersection_sod(Index n, Index r) {
  if (n < 2 || r < 1) throw input_error("BAD_N", "intersection shape needs n >= 2, r >= 1");
  SODReport rep;
  rep.lefschetz_description = lefschetz_text(n);
  rep.caveats.push_back("valid for a complete intersection of r quadrics in P^{n-1}");
  if (2 * r == n) {
    rep.statement = "equivalence D^b(X_L) = D^b(P(L), B0) at the Lefschetz balance point";
    rep.ambient = "equivalence";
    rep.equivalence = true;
    rep.components.push_back({ComponentKind::CLIFFORD_PART, 0,
                              "D^b(X_L) = D^b(P(L), B0), dim L = n/2"});
  } else if (2 * r < n) {
    rep.statement = "intersection of quadrics: Clifford part plus twisted line bundles";
    rep.ambient = "D^b(X_L)";
    rep.components.push_back({ComponentKind::CLIFFORD_PART, 0, "D^b(P(L), B0)"});
    for (Index k = 1; k <= n - 2 * r; ++k)
      rep.components.push_back({ComponentKind::BASE_TWIST, k, "O_{X_L}(" + std::to_string(k) + ")"});
  } else {
    rep.statement = "intersection of many quadrics: parity modules before the geometric part";
    rep.ambient = "D^b(P(L), B0)";
    for (long k = static_cast<long>(n) - 2 * static_cast<long>(r); k <= -1; ++k)
      rep.components.push_back({ComponentKind::MODULE_BK, k, "B_" + std::to_string(k)});
    rep.components.push_back({ComponentKind::CLIFFORD_PART, 0, "D^b(X_L)"});
    if (static_cast<long>(n) - 2 * static_cast<long>(r) == -1)
      rep.caveats.push_back(
          "twist list degenerates to the single module B_{-1}; boundary convention flagged");
  }
  if (r == 2) {
    rep.branch_points = n;
    if (n % 2 == 0) {
      rep.curve_genus = n / 2 - 1;
      rep.cover_description = "twofold covering of P^1 ramified at " + std::to_string(n) +
                              " points (assuming simple degenerations)";
    } else {
      rep.cover_description =
          "P^1 with Z/2 stack structure at the critical values (assuming simple degenerations)";
    }
  }
  return rep;
}

Index kgroup_rank_smooth_quadric(Index dim) {
  if (dim < 0) throw input_error("BAD_N", "quadric dimension must be >= 0");
  return dim % 2 == 0 ? dim + 2 : dim + 1;
}

std::vector<PushforwardRow> pushforward_table(Index n, long m_lo, long m_hi) {
  std::vector<PushforwardRow> rows;
  for (long m = m_lo; m <= m_hi; ++m) {
    PushforwardRow row;
    row.m = m;
    if (m >= 0) {
      row.kind = "A_m";
      row.dimension = quadric_dim(n, static_cast<Index>(m));
      row.cohomological_degree = 0;
    } else if (m >= 3 - static_cast<long>(n)) {
      row.kind = "ZERO";
      row.dimension = 0;
      row.cohomological_degree = 0;
    } else {
      row.kind = "A*_{2-m-n} (x) det E (x) L [2-n]";
      row.dimension = quadric_dim(n, static_cast<Index>(2 - m - n));
      row.cohomological_degree = n - 2;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CentralReductionReport central_reduction_report(
    const QuadraticForm& q, const std::vector<std::vector<Rational>>& sample_points) {
  CentralReductionReport rep;
  rep.n = q.n;
  rep.discriminant = discriminant(q);
  rep.simple_degenerations = discriminant_squarefree(q, &rep.degeneration_witness);
  const bool even = q.n % 2 == 0;
  const Index m_half = q.n / 2;
  if (even) {
    rep.cover_description =
        "double cover of the base branched over the discriminant; the even Clifford algebra "
        "pushes forward from it (Azumaya away from corank >= 2)";
  } else {
    rep.cover_description =
        "base with a Z/2 stack structure along the discriminant; the full Clifford algebra "
        "descends to it (Azumaya away from corank >= 2)";
  }
  if (q.base_vars.size() == 2) {
    if (rep.simple_degenerations.value_or(false)) {
      rep.pencil_conclusion =
          even ? "one-parameter family with simple degenerations: the Clifford part is the "
                 "derived category of a smooth double cover curve (genus " +
                     std::to_string(q.n / 2 - 1) + " for the pencil case)"
               : "one-parameter family with simple degenerations: the Clifford part is the "
                 "derived category of a stacky P^1";
    } else {
      rep.pencil_conclusion = "degenerations are not simple; no curve conclusion";
    }
  }

  for (const auto& pt : sample_points) {
    QMatrix g = q.gram_at(pt);
    const Index corank = q.n - rank_bareiss(g);
    if (corank >= 2) {
      std::ostringstream os;
      os << "sample point has corank " << corank << " >= 2; no Azumaya certificate there";
      throw input_error("CORANK2_POINT", os.str());
    }
    CliffordAlgebra alg(q.n, g);
    PointCertificate cert;
    cert.point = pt;
    cert.corank = corank;
    CentralElement ce = central_element(alg);
    cert.d_squared = ce.d_squared;
    if (corank == 0) {
      cert.quotient = false;
      cert.structure = structure_report(alg, even ? Subalgebra::EVEN : Subalgebra::FULL);
    } else {
      cert.quotient = true;
      cert.structure = quotient_by_d(alg, even ? Subalgebra::EVEN : Subalgebra::FULL).structure;
      // expected degree 2^{m-1} (even n = 2m) resp. 2^m (odd n = 2m+1)
      const Index expected_degree = Index(1) << (even ? m_half - 1 : m_half);
      if (cert.structure.kind == AlgebraStructureReport::Kind::CENTRAL_SIMPLE &&
          cert.structure.degree != expected_degree)
        throw invariant_error("corank-1 quotient degree disagrees with the rank formula");
    }
    rep.certificates.push_back(std::move(cert));
  }
  return rep;
}

}  // namespace cliffib

#pragma once

#include <cstdint>
#include <optional>

#include "hopfforge/hd_builder.hpp"

namespace hopfforge {

/**
 * Minimal triangular structure choice on H(D): an admissible isomorphism
 * phi: G* -> G plus one matrix M_g: V_g* -> V_{g^{-1}} per g with n_g > 0,
 * subject to M_{g^{-1}} = M_g^T (so M_g is symmetric when g = g^{-1}).
 */
struct StructureChoice {
  DualIso phi;
  std::map<GroupElement, CycloMat> m_maps;
};

// {±1, ±i, ±2, ±1/2}
std::vector<CycloNumber> default_sample_pool();

// Seed-deterministic draw of the M-maps with entries from the pool,
// redrawing singular matrices. Returns nullopt when no choice exists
// (n_g != n_{g^{-1}} for some g); throws SamplingError when the redraw
// budget is exhausted.
std::optional<std::map<GroupElement, CycloMat>> sample_sk(
    const Datum& d, std::uint64_t seed,
    const std::vector<CycloNumber>& pool = default_sample_pool());

// Dimension of the free parameter space of the M-maps (0 when empty).
long sk_parameter_count(const Datum& d);

// The isomorphism H(D)^{*cop} -> H(D) determined by T via the dual PBW
// basis, as a dim x dim matrix on dual-basis coordinates. The result is
// machine-verified to be a unital bialgebra isomorphism by structure
// transport; throws InvalidStructureChoice with a witness on failure.
CycloMat build_f_T(const HDAlgebra& hd, const StructureChoice& t);

// R = sum_i b_i (x) f(b_i*).
TensorElement rmatrix_from_f(const HopfStructure& h, const CycloMat& f);

// The five triangularity identities: counit legs, both hexagons, the
// intertwiner law Delta^cop(b) R = R Delta(b), and unitarity R R_21 = 1 (x) 1.
// Throws BoundExceeded when dim > max_dim (hexagons are cubic in dim).
Report verify_triangular(const HopfStructure& h, const TensorElement& r,
                         long max_dim = 32);

struct RMatrixAnalysis {
  SparseVec u;           // Drinfeld element sum S(y_i) x_i
  long rank = 0;         // rank of the dim x dim coefficient matrix of R
  bool minimal = false;  // rank == dim
  Report checks;
};

// Exact checks: u grouplike, u^2 = 1, S(u) = u, S^2(b) u = u b for all basis
// b, S^4 = id, and 4 | dim whenever S^2 != id and R is minimal.
RMatrixAnalysis drinfeld_analysis(const HopfStructure& h,
                                  const TensorElement& r);

std::pair<long, bool> minimality_rank(const HopfStructure& h,
                                      const TensorElement& r);

/** Pointedness certificate supplied with an external structure. */
struct Generators {
  std::vector<SparseVec> grouplikes;
  std::vector<SparseVec> skew_primitives;
};

struct ExtractionResult {
  Datum datum;
  StructureChoice t;
  Report checks;
  // psi: H(datum) -> input, label basis to PBW monomials, column-wise.
  CycloMat psi;
};

// Recovers (D, T) from a minimal triangular structure with generator data:
// reconstructs the group from the grouplikes, reads the form off
// F(g, h) = <f_R^{-1}(g), h>, extracts V_g as the -1 eigenspace of
// conjugation on P_{1,g}, reads (phi, M) off f_R through the dual PBW
// basis, and certifies the whole answer by rebuilding H(D) and matching its
// R-matrix through the reconstruction isomorphism. Every hypothesis used is
// machine-checked; the first failure raises HypothesisViolation with a
// witness naming the failing law.
ExtractionResult extract_datum(const HopfStructure& h, const TensorElement& r,
                               const Generators& gens, long max_dim = 64);

// True when some group isomorphism carries one datum to the other,
// preserving form values and multiplicities.
bool datum_equivalent(const Datum& a, const Datum& b);

}  // namespace hopfforge

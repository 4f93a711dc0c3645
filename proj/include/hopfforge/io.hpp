#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hopfforge/hd_builder.hpp"
#include "hopfforge/triangular.hpp"

namespace hopfforge {

using Json = nlohmann::json;

// Canonical serialization: compact, keys sorted. Identical values always
// produce identical bytes, so emitted files are diffable and round-trip
// bit-exactly.
std::string canonical(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// {"conductor": N, "coeffs": ["p/q", ...]} with phi(N) lowest-term rational
// strings in the power basis. Loading rejects literals that are not in
// canonical form (wrong conductor, wrong length, non-reduced fractions).
Json cyclo_to_json(const CycloNumber& c);
CycloNumber cyclo_from_json(const Json& j);

Json group_to_json(const FiniteAbelianGroup& g);
FiniteAbelianGroup group_from_json(const Json& j);

// {"cyclic_factors": [...], "conductor": N, "exponent_matrix": [[...]]}
Json form_to_json(const SkewForm& f);
SkewForm form_from_json(const Json& j);

// {"group": {...}, "form": {...}, "n": [{"element": [...], "value": k}, ...]}
Json datum_to_json(const Datum& d);
Datum datum_from_json(const Json& j);

// Structure-constant file. mult entries [i, j, k, c]: c is the coefficient
// of b_k in b_i * b_j; comult entries [i, j, k, c]: c is the coefficient of
// b_j (x) b_k in Delta(b_i); antipode is dense with antipode[i][j] = the
// coefficient of b_i in S(b_j). There is no unit field: the loader recovers
// the unit from the antipode identity m(S (x) id)Delta(b) = eps(b) 1 on the
// first basis element with eps(b) != 0 and verifies it is two-sided.
Json structure_to_json(const HopfStructure& h);
HopfStructure structure_from_json(const Json& j);

struct LabelEntry {
  long index = 0;
  std::vector<long> group_part;
  // (grade exponent vector, index within the grade), per wedge factor.
  std::vector<std::pair<std::vector<long>, long>> wedge;
};
struct LabelMap {
  std::vector<long> cyclic_factors;
  std::vector<LabelEntry> labels;
};

Json labels_to_json(const HDAlgebra& hd);
Json labels_to_json(const LabelMap& m);
LabelMap labels_from_json(const Json& j);

// Sparse vector as [[index, c], ...], ascending, no zeros.
Json sparse_vec_to_json(const SparseVec& v);
SparseVec sparse_vec_from_json(const Json& j, long dim);

// R-matrix file: bare array of triples [[i, j, c], ...].
Json rmatrix_to_json(const TensorElement& r);
TensorElement rmatrix_from_json(const Json& j, long dim);

// {"grouplikes": [vec, ...], "skew_primitives": [vec, ...]}
Json generators_to_json(const Generators& g);
Generators generators_from_json(const Json& j, long dim);

// {"phi": [[...], ...], "m_maps": [{"grade": [...], "matrix": [[c, ...]]}]}
Json structure_choice_to_json(const StructureChoice& t);
StructureChoice structure_choice_from_json(const Json& j);

// Verdict object {check_name: {"pass": bool, "witness": str}, ...}.
Json report_to_json(const Report& r);

}  // namespace hopfforge

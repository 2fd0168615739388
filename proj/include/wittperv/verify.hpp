#pragma once

// The pipeline on W^v(k): the triangle W^v -> i_* i^* W^v -> j_! j^* W^v[1],
// its Gamma_c cohomology sequence
//   0 -> Ker p -> Ker F -> G_a(k) -> Coker p -> Coker F -> 0,
// the perfect-field specialization, the sharp points Ker F, and the report.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wittperv/basering.hpp"
#include "wittperv/cochain.hpp"
#include "wittperv/perv.hpp"
#include "wittperv/sheaves.hpp"
#include "wittperv/verdict.hpp"

namespace wittperv {

struct SixTermEntry {
  std::string term;          // "Ker p", "G_a(k)", ...
  std::string engine_label;  // label in the cone cohomology sequence
  std::string alt_label;     // conventional degree label where it differs
  uint64_t order = 0;
  Verdict exactness = Verdict::Pass();
};

struct SixTermResult {
  // Cohomology sequence of 0 -> Gamma_c(M) -> Cone -> Gamma_c(j_! j^* M)[1] -> 0
  // for the counit j_! j^* M -> M.
  LongExactSequence les;
  // Positions in `les` of H^-1(Cone), Ker p, Ker F, H^0(Cone), Coker p, Coker F.
  std::array<size_t, 6> index{};
  std::array<SixTermEntry, 6> entries;
  GroupHom ker_p_to_ker_f;      // connecting map
  GroupHom ker_f_to_ga;
  GroupHom ga_to_coker_p;
  GroupHom coker_p_to_coker_f;  // connecting map
  // Coker(u) -> H^0(Cone), [y] |-> [(-v y, y)], checked bijective.
  Verdict ga_is_coker_u = Verdict::Skipped("not computed");
  uint64_t h1_cone_order = 0;

  bool AllExact() const;
  uint64_t LeadingOrder() const { return entries[0].order; }
};

// For any object M. Throws InvariantViolation if an internal square or
// complex check fails.
SixTermResult SixTermSequence(const PervObj& m);

// W^v(k) at level n. Adds the check that Coker(u) = Coker V -> k, x |-> x_0,
// is bijective.
struct WittSixTerm {
  PervObj sheaf;
  SixTermResult seq;
  Verdict coker_v_is_k = Verdict::Skipped("not computed");
};
WittSixTerm WittSixTermSequence(WittFamily& fam, size_t n, WittModel model);

// Ker(F: W_{n+1} -> W_n), mixed model.
struct SharpPoints {
  size_t n = 0;
  Subgroup carrier;
  std::vector<uint64_t> invariant_factors;
};
SharpPoints ComputeSharpPoints(WittFamily& fam, size_t n);
// carrier = { x : x_i^p = 0 for i < n } as sets.
Verdict CheckSharpCoordinates(WittFamily& fam, const SharpPoints& s);

struct PerfectLevel {
  size_t n = 0;
  // F surjective, Coker F = 0.
  Verdict coker_f_zero = Verdict::Skipped("not computed");
  // Ker F -> G_a(k) is the zero map.
  Verdict ker_f_to_ga_zero = Verdict::Skipped("not computed");
  // Injective, then bijective by cardinality.
  Verdict ga_to_coker_p_bijective = Verdict::Skipped("not computed");
  uint64_t coker_p_order = 0;
};

struct PerfectBranchReport {
  std::vector<PerfectLevel> levels;
  Verdict ker_p_pro_zero = Verdict::Skipped("not computed");  // window 1
  Verdict ker_f_pro_zero = Verdict::Skipped("not computed");  // window 1
  bool ok() const;
};

PerfectLevel PerfectLevelFacts(size_t n, const SixTermResult& seq);
// Throws DomainError unless k is perfect.
PerfectBranchReport PerfectBranch(WittFamily& fam, size_t n_max, WittModel model = WittModel::kMixed);

struct SurrogateLevel {
  size_t n = 0;
  bool f_surjective = false;
  uint64_t coker_f_order = 0;
  // Surjective: H(Gamma_c(W^v)) is Ker F in degree 0 and equals the sharp
  // points. Otherwise skipped with the obstruction.
  Verdict concentrated = Verdict::Skipped("not computed");
};
std::vector<SurrogateLevel> SurjectivitySurrogate(WittFamily& fam, size_t n_max);

// (V, 1): C_p -> C_F is a chain map, and the counit on W^v has components
// (V, 1) equal to V computed on Witt vectors directly.
Verdict CheckVOneChainMap(WittFamily& fam, size_t n, WittModel model);
Verdict CheckCounitIsVOne(WittFamily& fam, size_t n, WittModel model);

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

struct LevelRecord {
  size_t n = 0;
  WittModel model = WittModel::kMixed;
  std::vector<std::pair<std::string, uint64_t>> sizes;
  std::vector<std::pair<std::string, std::vector<uint64_t>>> invariant_factors;
  std::array<SixTermEntry, 6> six_term;
  std::vector<NamedVerdict> checks;
  std::optional<std::vector<NamedVerdict>> perfect_branch;
  std::string perfect_skip_reason;
  std::vector<NamedVerdict> pro;
};

struct PipelineOptions {
  uint32_t p = 2;
  std::string modulus = "x";
  size_t levels = 2;
  std::vector<WittModel> models = {WittModel::kEndo, WittModel::kMixed};
  uint64_t cap = kDefaultCarrierCap;
};

struct PipelineReport {
  PipelineOptions options;
  std::string field;  // modulus as parsed
  std::string variable = "x";
  bool perfect = false;
  std::vector<LevelRecord> levels;

  bool ok() const;
  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

PipelineReport RunPipeline(const PipelineOptions& options);

nlohmann::ordered_json VerdictJson(const Verdict& v);

}  // namespace wittperv

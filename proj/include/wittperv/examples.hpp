#pragma once

// The fleet of small named objects and the example report run by the
// `examples` subcommand.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "wittperv/perv.hpp"
#include "wittperv/sheaves.hpp"
#include "wittperv/verify.hpp"

namespace wittperv {

struct Fleet {
  std::vector<PervObj> objects;
  std::vector<LocObj> local_systems;
};

Fleet ExampleFleet(uint64_t cap = kDefaultCarrierCap);

// A diagram on random small p-groups (p in {2, 3}) with random u and v. It
// need not satisfy (Inv).
struct RawDiagram {
  GroupPtr phi;
  GroupPtr psi;
  GroupHom u;
  GroupHom v;
};
RawDiagram RandomDiagram(std::mt19937_64& rng);

// Validate on a diagram that may fail (Inv): (Inv) and (Inv') must agree,
// and the witness inverse must hold whenever they do.
Verdict InvEquivalence(const RawDiagram& d);

struct ExamplesReport {
  std::vector<NamedVerdict> checks;
  // Checks that must fail; each entry records the witness of the failure.
  std::vector<NamedVerdict> expected_failures;
  MDirectionSearch m_direction;

  bool ok() const;
  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

ExamplesReport RunExamples(uint64_t seed, uint64_t cap = kDefaultCarrierCap);

}  // namespace wittperv

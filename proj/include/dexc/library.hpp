#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dexc/parse.hpp"

namespace dexc {

// The derivation scripts shipped with the project.  Later files splice
// blocks of earlier ones, so the order below is a dependency order and
// loading accumulates everything parsed so far.

struct CheckedProof {
  std::string file;
  std::string name;
  Judgment concl;
  DerivPtr deriv;
  bool ok = true;
  CheckResult result;
  std::string error;
};

inline const std::vector<std::string>& shipped_proof_files() {
  static const std::vector<std::string> files{
      "compose_empty.dproof",    "cotuple_empty.dproof",
      "untag_tag.dproof",        "untag_commute.dproof",
      "downcast_cotuple.dproof", "catch_raise.dproof",
      "pure_try.dproof",         "catch_commute.dproof"};
  return files;
}

// Parses and checks every shipped script against the given spec.  A parse
// failure throws; a kernel rejection is recorded on the block.
inline std::vector<CheckedProof> check_script_library(const DecoratedSpec& s,
                                                      const std::string& dir) {
  std::vector<NamedDerivation> lib;
  std::vector<CheckedProof> out;
  for (const auto& f : shipped_proof_files()) {
    std::vector<NamedDerivation> blocks =
        parse_proofs(s, read_file(dir + "/" + f), lib);
    for (auto& b : blocks) {
      CheckedProof cp;
      cp.file = f;
      cp.name = b.name;
      cp.deriv = b.deriv;
      cp.concl = b.deriv->concl;
      CheckResult r = check_derivation(s, b.deriv);
      cp.ok = r.ok;
      cp.result = r;
      if (!r.ok)
        cp.error = "node " + r.path + " [" + r.rule + "]: " + r.reason;
      out.push_back(std::move(cp));
      lib.push_back(std::move(b));
    }
  }
  return out;
}

// The equations those scripts establish, labeled file/block; blocks
// concluding a declaration are skipped.
inline std::vector<std::pair<std::string, Equation>> script_equations(
    const std::vector<CheckedProof>& lib) {
  std::vector<std::pair<std::string, Equation>> out;
  for (const auto& cp : lib)
    if (cp.concl.k == Judgment::K::eq)
      out.push_back({cp.file + "/" + cp.name, cp.concl.eq});
  return out;
}

}  // namespace dexc

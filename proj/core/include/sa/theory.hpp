#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sa/formula.hpp"
#include "sa/signature.hpp"

namespace sa {

// One equational axiom. Reading left-to-right:
//   Assoc    (X k Y) k Z = X k (Y k Z)
//   Comm     X k Y = Y k X
//   UnitL    (u k X) = X          u = unit of k
//   UnitR    (X k u) = X
//   Assign   a k b = c            constants a, b, c
//   Identify a = b
struct Axiom {
  enum Kind { Assoc, Comm, UnitL, UnitR, Assign, Identify } kind;
  Id conn = -1;
  Id a = -1, b = -1, c = -1;
};

// A single axiom application at a path; rev applies right-to-left.
struct RewriteStep {
  Axiom ax;
  Path at;
  bool rev = false;
};

Formula apply_rewrite(const Signature& sig, const Formula& f, const RewriteStep& step);

// Selects which axiom groups an operation may use.
struct TheorySubset {
  bool all = false;
  bool identify = false;
  std::set<Id> conns;  // connectives whose assoc/comm/unit/assignment axioms apply

  bool allows_conn(Id k) const { return all || conns.count(k) > 0; }
  bool allows_identify() const { return all || identify; }
  bool empty_subset() const { return !all && !identify && conns.empty(); }

  static TheorySubset full();
  static TheorySubset none();
  static TheorySubset plus_only(Id plus);  // =_+ : assoc/comm/unit/assignments of +
};

// Equational theory over a signature: assoc/comm/unit flags live on the
// connectives; assignments and identifications live here. Closed under
// negation (completed at load), and the finite constant algebra must be
// functional (checked eagerly; ambiguity is a hard error).
class Theory {
 public:
  void add_assignment(Id conn, Id a, Id b, Id c);
  void add_identification(Id a, Id b);

  // Dualizes every axiom, computes identification classes and the constant
  // fold closure, and checks functionality. Call once after population.
  void finalize(const Signature& sig);

  bool finalized() const { return finalized_; }
  Id rep(Id c) const { return rep_.at(c); }  // identification-class representative
  const std::vector<RewriteStep>& rep_trace(Id c) const { return rep_trace_.at(c); }

  // Fold of `a conn b` over representatives; steps (relative to the node)
  // realize it when non-null.
  std::optional<Id> fold(const Signature& sig, Id conn, Id a, Id b,
                         std::vector<RewriteStep>* steps = nullptr) const;

  std::optional<Id> assignment(Id conn, Id a, Id b) const;
  const std::vector<std::pair<Id, Id>>& identifications() const { return ident_; }
  const std::map<std::array<Id, 3>, Id>& assignments() const { return assign_; }

 private:
  std::map<std::array<Id, 3>, Id> assign_;  // (conn, a, b) -> c, raw ids
  std::vector<std::pair<Id, Id>> ident_;
  bool finalized_ = false;
  std::vector<Id> rep_;
  std::vector<std::vector<RewriteStep>> rep_trace_;
  std::map<std::array<Id, 3>, std::pair<Id, Axiom>> fold_;  // on representatives
};

// Canonical form deciding =_g; see equal(). Appends the axiom-level rewrite
// path from f to the result to *trace when given.
Formula canonicalize(const Signature& sig, const Theory& th, const Formula& f,
                     const TheorySubset& g, std::vector<RewriteStep>* trace = nullptr);

bool equal(const Signature& sig, const Theory& th, const Formula& x, const Formula& y,
           const TheorySubset& g);

// Maximal decomposition of f modulo =_+ into non-unit +-factors. The +-unit
// yields the empty multiset.
std::vector<Formula> plus_factors(const Signature& sig, const Theory& th, const Formula& f,
                                  Id plus);

// Literal +-spine members of f with their paths (no rewriting).
std::vector<std::pair<Path, Formula>> literal_plus_factors(const Formula& f, Id plus);

// Right-nested fold of factors with +; empty folds to the +-unit.
Formula fold_plus(const Signature& sig, const std::vector<Formula>& factors, Id plus);

}  // namespace sa

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sa/system.hpp"

namespace sa {

struct DerivNode;
using Derivation = std::shared_ptr<const DerivNode>;

// Open-deduction tree: a formula leaf, a composition by inference, or a
// composition by connectives. Rule name "=" is the generic theory-equality
// step.
struct DerivNode {
  enum Kind { Leaf, Infer, Comp } kind;
  Formula form;         // Leaf
  Derivation up, down;  // Infer
  std::string rule;     // Infer
  Id conn = -1;         // Comp
  Derivation left, right;
};

extern const std::string kEqRule;  // "="

Derivation d_leaf(Formula f);
Derivation d_infer(Derivation up, std::string rule, Derivation down);
Derivation d_comp(Id conn, Derivation l, Derivation r);

Formula premiss(const Derivation& d);
Formula conclusion(const Derivation& d);

// Throws CheckError at the first failing inference node.
void check(const System& sys, const Derivation& d);

// Proof = derivation whose premiss is =-equal to the distinguished 1.
bool is_proof(const System& sys, const Derivation& d);
void require_proof(const System& sys, const Derivation& d);

// The paper's derivation composition; premiss(b) must be syntactically equal
// to conclusion(a).
Derivation compose_seq(const Derivation& a, const Derivation& b);

// Wraps d in Comp nodes along ctx's hole path, with Leaf siblings.
Derivation plug_derivation(const FormulaContext& ctx, const Derivation& d);

// Applies a logical rule at a path of f; returns the rewritten formula and
// the checkable one-step derivation realizing it.
std::pair<Formula, Derivation> apply_at(const System& sys, const std::string& rule,
                                        const Path& path, const Formula& f);

// One-step generic equality derivation from f to g (verified).
Derivation eq_step(const System& sys, const Formula& f, const Formula& g);

// Sequential form: a start formula and totally ordered steps with redex paths.
struct SeqStep {
  std::string rule;
  Path path;
  Formula result;
};
struct SeqDerivation {
  Formula start;
  std::vector<SeqStep> steps;
};

SeqDerivation sequentialize(const Derivation& d);
Derivation from_sequential(const System& sys, const SeqDerivation& s);

// CoS notation for =_g: equality steps whose endpoints are =_g-equal are
// absorbed into the adjacent formulae.
SeqDerivation cos_normalize(const System& sys, const SeqDerivation& s, const TheorySubset& g);

// Number of steps that are not +-equalities: logical steps cost 1, "=" steps
// cost 1 unless their endpoints are =_+-equal.
int length_plus(const System& sys, const Derivation& d);
int length_plus_seq(const System& sys, const SeqDerivation& s);

// Document formats.
std::string render_derivation(const System& sys, const Derivation& d);
Derivation parse_derivation(const System& sys, const std::string& text);
std::string render_sequential(const System& sys, const SeqDerivation& s);
SeqDerivation parse_sequential(const System& sys, const std::string& text);

}  // namespace sa

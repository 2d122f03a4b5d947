#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sa/formula.hpp"
#include "sa/signature.hpp"
#include "sa/theory.hpp"

namespace sa {

// A medial-shaped rule, fixed by (kind, alpha, beta):
//   down:  (A beta B) alpha (C beta D)   ->  (A alpha C) beta (B alpha^m D)
//   up:    (A beta B) alpha (C beta^M D) ->  (A alpha C) beta (B alpha D)
// When alpha (resp. beta) is an atom, the scheme covers every atom token.
struct RuleScheme {
  std::string name;
  enum Kind { Down, Up } kind;
  Id alpha;
  Id beta;
};

struct System {
  std::string name;
  Signature sig;
  Theory th;
  std::vector<RuleScheme> rules;
  Id one = -1;    // distinguished proof premiss
  Id times = -1;  // distinguished strong connective, if declared
  Id plus = -1;   // dual of times

  const RuleScheme* find_rule(const std::string& name) const;
  Id zero() const;  // unit of plus
  TheorySubset plus_subset() const { return TheorySubset::plus_only(plus); }

  bool equal_full(const Formula& a, const Formula& b) const {
    return equal(sig, th, a, b, TheorySubset::full());
  }
  bool equal_plus(const Formula& a, const Formula& b) const {
    return equal(sig, th, a, b, plus_subset());
  }
};

// The matched metavariables of a rule instance. For atom-family schemes,
// alpha_inst / beta_inst record the concrete atom token.
struct RuleMatch {
  Formula a, b, c, d;
  Id alpha_inst, beta_inst;
};

// Instantiated premiss / conclusion of a scheme. alpha/beta must be concrete
// connectives (pass the matched instances for atom families).
Formula rule_premiss(const System& sys, const RuleScheme& r, Id alpha, Id beta, const Formula& a,
                     const Formula& b, const Formula& c, const Formula& d);
Formula rule_conclusion(const System& sys, const RuleScheme& r, Id alpha, Id beta,
                        const Formula& a, const Formula& b, const Formula& c, const Formula& d);

// Purely structural matching of premiss/conclusion against the scheme; no
// theory equality is applied.
std::optional<RuleMatch> match_rule_instance(const System& sys, const RuleScheme& r,
                                             const Formula& premiss, const Formula& conclusion);

// True iff r is an up scheme whose outer connective is the distinguished x.
bool is_cut(const System& sys, const RuleScheme& r);

struct LintReport {
  struct Item {
    bool pass = false;
    std::string witness;  // failure evidence, empty when pass
  };
  Item cond[5];
  bool pass() const {
    for (auto& c : cond)
      if (!c.pass) return false;
    return true;
  }
};

// The five splittability conditions.
LintReport lint_splittable(const System& sys);

// Parses a system-definition document (the .sas format).
System load_system_text(const std::string& text);

// Built-ins: saks, samlls, sabvu, sabv and their ".down" fragments; any other
// name is read from disk by the caller.
bool is_builtin_system(const std::string& name);
System load_system(const std::string& name_or_text);
std::string builtin_system_text(const std::string& name);
std::vector<std::string> builtin_system_names();

}  // namespace sa

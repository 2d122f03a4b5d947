#include "sa/system.hpp"

#include <algorithm>
#include <sstream>

#include "sa/error.hpp"

namespace sa {

const RuleScheme* System::find_rule(const std::string& n) const {
  for (auto& r : rules)
    if (r.name == n) return &r;
  return nullptr;
}

Id System::zero() const {
  if (plus < 0) throw ConfigError("system '" + name + "' has no distinguished weak connective");
  auto u = sig.conn_info(plus).unit;
  if (!u) throw ConfigError("distinguished weak connective has no unit");
  return *u;
}

Formula rule_premiss(const System& sys, const RuleScheme& r, Id alpha, Id beta, const Formula& a,
                     const Formula& b, const Formula& c, const Formula& d) {
  if (r.kind == RuleScheme::Down)
    return mk_app(alpha, mk_app(beta, a, b), mk_app(beta, c, d));
  return mk_app(alpha, mk_app(beta, a, b), mk_app(sys.sig.strong_of(beta), c, d));
}

Formula rule_conclusion(const System& sys, const RuleScheme& r, Id alpha, Id beta,
                        const Formula& a, const Formula& b, const Formula& c, const Formula& d) {
  if (r.kind == RuleScheme::Down)
    return mk_app(beta, mk_app(alpha, a, c), mk_app(sys.sig.weak_of(alpha), b, d));
  return mk_app(beta, mk_app(alpha, a, c), mk_app(alpha, b, d));
}

static bool conn_matches(const Signature& sig, Id scheme_conn, Id actual) {
  if (scheme_conn == actual) return true;
  return sig.conn_info(scheme_conn).is_atom && sig.conn_info(actual).is_atom;
}

std::optional<RuleMatch> match_rule_instance(const System& sys, const RuleScheme& r,
                                             const Formula& premiss, const Formula& conclusion) {
  const Signature& sig = sys.sig;
  if (premiss->is_leaf()) return std::nullopt;
  Id alpha = premiss->sym;
  if (!conn_matches(sig, r.alpha, alpha)) return std::nullopt;
  Formula pl = premiss->left, pr = premiss->right;
  if (pl->is_leaf() || pr->is_leaf()) return std::nullopt;
  Id beta = pl->sym;
  if (!conn_matches(sig, r.beta, beta)) return std::nullopt;
  Id want_pr = (r.kind == RuleScheme::Down) ? beta : sig.strong_of(beta);
  if (pr->sym != want_pr) return std::nullopt;
  RuleMatch m{pl->left, pl->right, pr->left, pr->right, alpha, beta};
  Formula want = rule_conclusion(sys, r, alpha, beta, m.a, m.b, m.c, m.d);
  if (!identical(want, conclusion)) return std::nullopt;
  return m;
}

bool is_cut(const System& sys, const RuleScheme& r) {
  if (sys.times < 0) throw ConfigError("system '" + sys.name + "' has no distinguished x");
  return r.kind == RuleScheme::Up && r.alpha == sys.times;
}

LintReport lint_splittable(const System& sys) {
  LintReport rep;
  const Signature& sig = sys.sig;

  // 1: a strong x with unit 1 and dual + with unit 0
  {
    auto& c = rep.cond[0];
    if (sys.times < 0) {
      c.witness = "no distinguished x declared";
    } else {
      const auto& ti = sig.conn_info(sys.times);
      if (ti.polarity != Polarity::Strong)
        c.witness = "'" + ti.name + "' is not strong";
      else if (!ti.unit || *ti.unit != sys.one)
        c.witness = "unit of '" + ti.name + "' is not the distinguished 1";
      else {
        const auto& pi = sig.conn_info(sys.plus);
        if (!pi.unit || *pi.unit != sig.dual_const(sys.one))
          c.witness = "unit of '" + pi.name + "' is not the negation of 1";
        else
          c.pass = true;
      }
    }
  }

  // 2: uniquely down-rules with inner connective +, one per connective
  {
    auto& c = rep.cond[1];
    std::string w;
    for (auto& r : sys.rules) {
      if (r.kind != RuleScheme::Down) {
        w = "rule '" + r.name + "' is an up-rule";
        break;
      }
      if (sys.plus < 0 || r.beta != sys.plus) {
        w = "rule '" + r.name + "' has inner connective != +";
        break;
      }
    }
    if (w.empty() && sys.plus >= 0) {
      for (Id k = 0; k < sig.num_connectives(); ++k) {
        if (k == sys.plus) continue;  // +'s own rule is derivable from assoc/comm
        bool found = false;
        for (auto& r : sys.rules)
          if (r.kind == RuleScheme::Down && conn_matches(sig, r.alpha, k) && r.beta == sys.plus)
            found = true;
        if (!found) {
          w = "no down-rule for connective '" + sig.conn_info(k).name + "'";
          break;
        }
      }
    }
    if (sys.plus < 0) w = "no distinguished +";
    c.pass = w.empty();
    c.witness = w;
  }

  // 3: u + ~u = 1 inside =_+ for every constant u
  {
    auto& c = rep.cond[2];
    c.pass = true;
    if (sys.plus < 0) {
      c.pass = false;
      c.witness = "no distinguished +";
    } else {
      for (Id u = 0; u < sig.num_constants(); ++u) {
        Formula lhs = mk_app(sys.plus, mk_const(u), mk_const(sig.dual_const(u)));
        if (!equal(sig, sys.th, lhs, mk_const(sys.one), sys.plus_subset())) {
          c.pass = false;
          c.witness = "u=" + sig.const_info(u).name;
          break;
        }
      }
    }
  }

  // 4: + associative and commutative
  {
    auto& c = rep.cond[3];
    if (sys.plus < 0) {
      c.witness = "no distinguished +";
    } else {
      const auto& pi = sig.conn_info(sys.plus);
      if (!pi.assoc)
        c.witness = "'" + pi.name + "' is not associative";
      else if (!pi.comm)
        c.witness = "'" + pi.name + "' is not commutative";
      else
        c.pass = true;
    }
  }

  // 5: 1 alpha^M 1 = 1 for every connective
  {
    auto& c = rep.cond[4];
    c.pass = true;
    for (Id k = 0; k < sig.num_connectives(); ++k) {
      Id km = sig.strong_of(k);
      Formula lhs = mk_app(km, mk_const(sys.one), mk_const(sys.one));
      if (!equal(sig, sys.th, lhs, mk_const(sys.one), TheorySubset::full())) {
        c.pass = false;
        c.witness = "alpha=" + sig.conn_info(k).name;
        break;
      }
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// System document parsing

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

System load_system_text(const std::string& text) {
  System sys;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;

  struct PendingConn {
    std::string name, dual;
    Polarity pol;
    bool assoc = false, comm = false;
    std::string unit;
    int line;
  };
  std::vector<PendingConn> pconns;
  std::vector<std::pair<std::string, std::string>> pneg;  // constant negation pairs
  std::vector<std::string> atom_toks;
  std::vector<std::array<std::string, 4>> passign;  // conn a b c
  std::vector<std::pair<std::string, std::string>> pident;
  struct PendingRule {
    std::string name, kind, alpha, beta;
    int line;
  };
  std::vector<PendingRule> prules;
  std::string one_tok, times_tok;

  auto err = [&](const std::string& m) -> void { throw ParseError(m, lineno, 1); };

  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "system") {
      if (toks.size() != 2) err("expected: system <name>");
      sys.name = toks[1];
    } else if (kw == "constants") {
      for (size_t i = 1; i < toks.size(); ++i) sys.sig.add_constant(toks[i]);
    } else if (kw == "one") {
      if (toks.size() != 2) err("expected: one <tok>");
      one_tok = toks[1];
    } else if (kw == "negation") {
      if (toks.size() != 4 || toks[2] != "<->") err("expected: negation <tok> <-> <tok>");
      pneg.push_back({toks[1], toks[3]});
    } else if (kw == "connective") {
      if (toks.size() < 2) err("expected: connective <tok> ...");
      PendingConn pc;
      pc.name = toks[1];
      pc.pol = Polarity::Both;
      pc.line = lineno;
      bool pol_seen = false;
      for (size_t i = 2; i < toks.size(); ++i) {
        const std::string& o = toks[i];
        if (o.rfind("dual=", 0) == 0)
          pc.dual = o.substr(5);
        else if (o.rfind("polarity=", 0) == 0) {
          std::string p = o.substr(9);
          pol_seen = true;
          if (p == "strong")
            pc.pol = Polarity::Strong;
          else if (p == "weak")
            pc.pol = Polarity::Weak;
          else if (p == "both")
            pc.pol = Polarity::Both;
          else
            err("bad polarity '" + p + "'");
        } else if (o == "assoc")
          pc.assoc = true;
        else if (o == "comm")
          pc.comm = true;
        else if (o.rfind("unit=", 0) == 0)
          pc.unit = o.substr(5);
        else
          err("unknown connective option '" + o + "'");
      }
      if (pc.dual.empty()) err("connective '" + pc.name + "' needs dual=<tok>");
      if (!pol_seen) err("connective '" + pc.name + "' needs polarity=");
      pconns.push_back(pc);
    } else if (kw == "atoms") {
      for (size_t i = 1; i < toks.size(); ++i) atom_toks.push_back(toks[i]);
    } else if (kw == "times") {
      if (toks.size() != 2) err("expected: times <tok>");
      times_tok = toks[1];
    } else if (kw == "assign") {
      if (toks.size() != 6 || toks[4] != "=") err("expected: assign <conn> <tok> <tok> = <tok>");
      passign.push_back({toks[1], toks[2], toks[3], toks[5]});
    } else if (kw == "identify") {
      if (toks.size() != 4 || toks[2] != "=") err("expected: identify <tok> = <tok>");
      pident.push_back({toks[1], toks[3]});
    } else if (kw == "rule") {
      if (toks.size() != 5 || toks[3].rfind("alpha=", 0) != 0 || toks[4].rfind("beta=", 0) != 0)
        err("expected: rule <name> <down|up> alpha=<conn> beta=<conn>");
      prules.push_back({toks[1], toks[2], toks[3].substr(6), toks[4].substr(5), lineno});
    } else {
      err("unknown directive '" + kw + "'");
    }
  }

  // Declare connectives, then atoms (self-dual, polarity both, bare).
  for (auto& pc : pconns) {
    ConnectiveInfo ci;
    ci.name = pc.name;
    ci.polarity = pc.pol;
    ci.assoc = pc.assoc;
    ci.comm = pc.comm;
    sys.sig.add_connective(ci);
  }
  for (auto& t : atom_toks) {
    ConnectiveInfo ci;
    ci.name = t;
    ci.polarity = Polarity::Both;
    ci.is_atom = true;
    sys.sig.add_connective(ci);
  }
  auto conn_id = [&](const std::string& n, int at_line) -> Id {
    auto k = sys.sig.connective(n);
    if (!k) throw ParseError("undeclared connective '" + n + "'", at_line, 1);
    return *k;
  };
  auto const_id = [&](const std::string& n, int at_line) -> Id {
    auto c = sys.sig.constant(n);
    if (!c) throw ParseError("undeclared constant '" + n + "'", at_line, 1);
    return *c;
  };
  for (auto& pc : pconns) {
    Id k = *sys.sig.connective(pc.name);
    auto& ci = sys.sig.conn_info_mut(k);
    ci.dual = conn_id(pc.dual, pc.line);
    if (!pc.unit.empty()) ci.unit = const_id(pc.unit, pc.line);
  }
  for (auto& t : atom_toks) {
    Id k = *sys.sig.connective(t);
    sys.sig.conn_info_mut(k).dual = k;
  }
  for (auto& [a, b] : pneg) sys.sig.set_constant_dual(const_id(a, 0), const_id(b, 0));

  // Auto-complete negation closure of connective attributes.
  for (Id k = 0; k < sys.sig.num_connectives(); ++k) {
    Id d = sys.sig.conn_info(k).dual;
    if (d < 0) continue;
    auto& ki = sys.sig.conn_info_mut(k);
    auto& di = sys.sig.conn_info_mut(d);
    if (ki.assoc || di.assoc) ki.assoc = di.assoc = true;
    if (ki.comm || di.comm) ki.comm = di.comm = true;
    if (ki.unit && !di.unit) di.unit = sys.sig.dual_const(*ki.unit);
  }

  sys.sig.validate();

  if (one_tok.empty()) throw SemanticError("system document declares no 'one'");
  sys.one = const_id(one_tok, 0);
  if (!times_tok.empty()) {
    sys.times = conn_id(times_tok, 0);
    sys.plus = sys.sig.dual_conn(sys.times);
  }

  for (auto& pa : passign)
    sys.th.add_assignment(conn_id(pa[0], 0), const_id(pa[1], 0), const_id(pa[2], 0),
                          const_id(pa[3], 0));
  for (auto& [a, b] : pident) sys.th.add_identification(const_id(a, 0), const_id(b, 0));
  sys.th.finalize(sys.sig);

  for (auto& pr : prules) {
    RuleScheme r;
    r.name = pr.name;
    if (pr.kind == "down")
      r.kind = RuleScheme::Down;
    else if (pr.kind == "up")
      r.kind = RuleScheme::Up;
    else
      throw ParseError("rule kind must be down or up", pr.line, 1);
    r.alpha = conn_id(pr.alpha, pr.line);
    r.beta = conn_id(pr.beta, pr.line);
    if (sys.find_rule(pr.name)) throw SemanticError("rule '" + pr.name + "' declared twice");
    sys.rules.push_back(r);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Built-in systems

namespace {

const char* kSaks = R"(# subatomic classical logic (linear fragment)
system saks
constants f t
one t
negation t <-> f
connective and dual=or polarity=strong assoc comm unit=t
connective or dual=and polarity=weak assoc comm unit=f
atoms a b c
times and
assign and f f = f
assign or t t = t
assign a f f = f
assign a t t = t
assign b f f = f
assign b t t = t
assign c f f = f
assign c t t = t
rule a.down down alpha=a beta=or
rule and.down down alpha=and beta=or
rule a.up up alpha=and beta=a
rule or.up up alpha=and beta=or
)";

const char* kSamlls = R"(# subatomic multiplicative linear logic
system samlls
constants bot one
one one
negation one <-> bot
connective ten dual=par polarity=strong assoc comm unit=one
connective par dual=ten polarity=weak assoc comm unit=bot
atoms a b c
times ten
assign a bot bot = bot
assign a one one = one
assign b bot bot = bot
assign b one one = one
assign c bot bot = bot
assign c one one = one
rule a.down down alpha=a beta=par
rule ten.down down alpha=ten beta=par
rule a.up up alpha=ten beta=a
rule par.up up alpha=ten beta=par
)";

const char* kSabvu = R"(# subatomic BV with distinct units
system sabvu
constants bot o one
one one
negation one <-> bot
negation o <-> o
connective ten dual=par polarity=strong assoc comm unit=one
connective par dual=ten polarity=weak assoc comm unit=bot
connective seq dual=seq polarity=both assoc unit=o
atoms a b c
times ten
assign par o o = one
assign ten o o = bot
assign seq one one = one
assign seq bot bot = bot
assign a bot bot = bot
assign a one one = one
assign b bot bot = bot
assign b one one = one
assign c bot bot = bot
assign c one one = one
rule a.down down alpha=a beta=par
rule ten.down down alpha=ten beta=par
rule seq.down down alpha=seq beta=par
rule a.up up alpha=ten beta=a
rule par.up up alpha=ten beta=par
rule seq.up up alpha=ten beta=seq
)";

std::string down_only(const std::string& text, const std::string& name) {
  std::istringstream is(text);
  std::string line, out;
  while (std::getline(is, line)) {
    auto toks = split_ws(line);
    if (!toks.empty() && toks[0] == "system") {
      out += "system " + name + "\n";
      continue;
    }
    if (!toks.empty() && toks[0] == "rule" && toks.size() >= 3 && toks[2] == "up") continue;
    out += line + "\n";
  }
  return out;
}

std::string sabv_text() {
  std::string t = kSabvu;
  auto pos = t.find("system sabvu");
  t.replace(pos, 12, "system sabv ");
  return t + "identify one = o\nidentify bot = o\n";
}

}  // namespace

std::vector<std::string> builtin_system_names() {
  return {"saks", "saks.down", "samlls", "samlls.down", "sabvu", "sabvu.down", "sabv", "sabv.down"};
}

bool is_builtin_system(const std::string& name) {
  auto ns = builtin_system_names();
  return std::find(ns.begin(), ns.end(), name) != ns.end();
}

std::string builtin_system_text(const std::string& name) {
  if (name == "saks") return kSaks;
  if (name == "samlls") return kSamlls;
  if (name == "sabvu") return kSabvu;
  if (name == "sabv") return sabv_text();
  if (name == "saks.down") return down_only(kSaks, "saks.down");
  if (name == "samlls.down") return down_only(kSamlls, "samlls.down");
  if (name == "sabvu.down") return down_only(kSabvu, "sabvu.down");
  if (name == "sabv.down") return down_only(sabv_text(), "sabv.down");
  throw ConfigError("unknown built-in system '" + name + "'");
}

System load_system(const std::string& name_or_text) {
  if (is_builtin_system(name_or_text)) return load_system_text(builtin_system_text(name_or_text));
  return load_system_text(name_or_text);
}

}  // namespace sa

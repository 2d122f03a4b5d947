#include "sa/derivation.hpp"

#include <cassert>
#include <cctype>
#include <functional>
#include <sstream>

#include "sa/error.hpp"

namespace sa {

const std::string kEqRule = "=";

Derivation d_leaf(Formula f) {
  auto n = std::make_shared<DerivNode>();
  n->kind = DerivNode::Leaf;
  n->form = std::move(f);
  return n;
}

Derivation d_infer(Derivation up, std::string rule, Derivation down) {
  auto n = std::make_shared<DerivNode>();
  n->kind = DerivNode::Infer;
  n->up = std::move(up);
  n->down = std::move(down);
  n->rule = std::move(rule);
  return n;
}

Derivation d_comp(Id conn, Derivation l, Derivation r) {
  auto n = std::make_shared<DerivNode>();
  n->kind = DerivNode::Comp;
  n->conn = conn;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

Formula premiss(const Derivation& d) {
  switch (d->kind) {
    case DerivNode::Leaf:
      return d->form;
    case DerivNode::Infer:
      return premiss(d->up);
    case DerivNode::Comp:
      return mk_app(d->conn, premiss(d->left), premiss(d->right));
  }
  throw Error("bad derivation node");
}

Formula conclusion(const Derivation& d) {
  switch (d->kind) {
    case DerivNode::Leaf:
      return d->form;
    case DerivNode::Infer:
      return conclusion(d->down);
    case DerivNode::Comp:
      return mk_app(d->conn, conclusion(d->left), conclusion(d->right));
  }
  throw Error("bad derivation node");
}

static void check_rec(const System& sys, const Derivation& d, std::string path) {
  switch (d->kind) {
    case DerivNode::Leaf:
      return;
    case DerivNode::Comp:
      check_rec(sys, d->left, path + "l");
      check_rec(sys, d->right, path + "r");
      return;
    case DerivNode::Infer: {
      check_rec(sys, d->up, path + "u");
      check_rec(sys, d->down, path + "d");
      Formula from = conclusion(d->up);
      Formula to = premiss(d->down);
      if (d->rule == kEqRule) {
        if (!sys.equal_full(from, to))
          throw CheckError("equality step does not hold: " + sys.sig.render(from) + " vs " +
                               sys.sig.render(to),
                           path);
        return;
      }
      const RuleScheme* r = sys.find_rule(d->rule);
      if (!r) throw CheckError("unknown rule '" + d->rule + "'", path);
      if (!match_rule_instance(sys, *r, from, to))
        throw CheckError("not an instance of rule '" + d->rule + "': " + sys.sig.render(from) +
                             " -> " + sys.sig.render(to),
                         path);
      return;
    }
  }
}

void check(const System& sys, const Derivation& d) { check_rec(sys, d, ""); }

bool is_proof(const System& sys, const Derivation& d) {
  return sys.equal_full(premiss(d), mk_const(sys.one));
}

void require_proof(const System& sys, const Derivation& d) {
  check(sys, d);
  if (!is_proof(sys, d))
    throw CheckError("derivation premiss " + sys.sig.render(premiss(d)) +
                     " is not =-equal to the distinguished 1");
}

Derivation compose_seq(const Derivation& a, const Derivation& b) {
  if (!identical(conclusion(a), premiss(b)))
    throw Error("composition endpoint mismatch: conclusion vs premiss differ");
  if (a->kind == DerivNode::Leaf) return b;
  if (b->kind == DerivNode::Leaf) return a;
  if (a->kind == DerivNode::Infer) return d_infer(a->up, a->rule, compose_seq(a->down, b));
  if (b->kind == DerivNode::Infer) return d_infer(compose_seq(a, b->up), b->rule, b->down);
  // both Comp; endpoints force the same connective
  assert(a->conn == b->conn);
  return d_comp(a->conn, compose_seq(a->left, b->left), compose_seq(a->right, b->right));
}

Derivation plug_derivation(const FormulaContext& ctx, const Derivation& d) {
  std::function<Derivation(const Formula&, size_t)> go = [&](const Formula& shape,
                                                             size_t depth) -> Derivation {
    if (depth == ctx.hole_path.size()) return d;
    Dir dir = ctx.hole_path[depth];
    if (shape->is_leaf()) throw Error("hole path walks off context shape");
    if (dir == Dir::L) return d_comp(shape->sym, go(shape->left, depth + 1), d_leaf(shape->right));
    return d_comp(shape->sym, d_leaf(shape->left), go(shape->right, depth + 1));
  };
  return go(ctx.shape, 0);
}

std::pair<Formula, Derivation> apply_at(const System& sys, const std::string& rule,
                                        const Path& path, const Formula& f) {
  const RuleScheme* r = sys.find_rule(rule);
  if (!r) throw SemanticError("unknown rule '" + rule + "'");
  Formula red = subtree_at(f, path);
  if (red->is_leaf()) throw SplitError("no match for rule '" + rule + "' at " + render_path(path));
  // Structural match of the premiss pattern.
  Id alpha = red->sym;
  auto fits = [&](Id scheme, Id actual) {
    return scheme == actual ||
           (sys.sig.conn_info(scheme).is_atom && sys.sig.conn_info(actual).is_atom);
  };
  if (!fits(r->alpha, alpha) || red->left->is_leaf() || red->right->is_leaf())
    throw SplitError("no match for rule '" + rule + "' at " + render_path(path));
  Id beta = red->left->sym;
  Id want_r = (r->kind == RuleScheme::Down) ? beta : sys.sig.strong_of(beta);
  if (!fits(r->beta, beta) || red->right->sym != want_r)
    throw SplitError("no match for rule '" + rule + "' at " + render_path(path));
  Formula concl = rule_conclusion(sys, *r, alpha, beta, red->left->left, red->left->right,
                                  red->right->left, red->right->right);
  Derivation step = d_infer(d_leaf(red), rule, d_leaf(concl));
  Derivation whole =
      path.empty() ? step : plug_derivation(context_at(f, path), step);
  return {replace_at(f, path, concl), whole};
}

Derivation eq_step(const System& sys, const Formula& f, const Formula& g) {
  if (!sys.equal_full(f, g))
    throw Error("equality step does not hold: " + sys.sig.render(f) + " vs " + sys.sig.render(g));
  return d_infer(d_leaf(f), kEqRule, d_leaf(g));
}

SeqDerivation sequentialize(const Derivation& d) {
  switch (d->kind) {
    case DerivNode::Leaf:
      return {d->form, {}};
    case DerivNode::Infer: {
      SeqDerivation a = sequentialize(d->up);
      SeqDerivation b = sequentialize(d->down);
      SeqDerivation out{a.start, std::move(a.steps)};
      out.steps.push_back(SeqStep{d->rule, {}, b.start});
      for (auto& s : b.steps) out.steps.push_back(s);
      return out;
    }
    case DerivNode::Comp: {
      SeqDerivation a = sequentialize(d->left);
      SeqDerivation b = sequentialize(d->right);
      SeqDerivation out{mk_app(d->conn, a.start, b.start), {}};
      Formula a_end = a.steps.empty() ? a.start : a.steps.back().result;
      for (auto& s : a.steps) {
        Path p{Dir::L};
        p.insert(p.end(), s.path.begin(), s.path.end());
        out.steps.push_back(SeqStep{s.rule, p, mk_app(d->conn, s.result, b.start)});
      }
      for (auto& s : b.steps) {
        Path p{Dir::R};
        p.insert(p.end(), s.path.begin(), s.path.end());
        out.steps.push_back(SeqStep{s.rule, p, mk_app(d->conn, a_end, s.result)});
      }
      return out;
    }
  }
  throw Error("bad derivation node");
}

Derivation from_sequential(const System& sys, const SeqDerivation& s) {
  Derivation d = d_leaf(s.start);
  Formula cur = s.start;
  for (auto& st : s.steps) {
    if (st.rule == kEqRule) {
      d = compose_seq(d, eq_step(sys, cur, st.result));
    } else {
      auto [next, frag] = apply_at(sys, st.rule, st.path, cur);
      if (!identical(next, st.result))
        throw CheckError("sequential step result mismatch for rule '" + st.rule + "'");
      d = compose_seq(d, frag);
    }
    cur = st.result;
  }
  return d;
}

SeqDerivation cos_normalize(const System& sys, const SeqDerivation& s, const TheorySubset& g) {
  // Absorbed equalities fuse into the adjacent formula, so surviving steps
  // stay contiguous; a surviving step then holds modulo =_g rather than
  // literally, which is exactly CoS notation for =_g.
  SeqDerivation out{s.start, {}};
  Formula cur = s.start;
  for (auto& st : s.steps) {
    if (st.rule == kEqRule && equal(sys.sig, sys.th, cur, st.result, g)) {
      if (out.steps.empty())
        out.start = st.result;
      else
        out.steps.back().result = st.result;
    } else {
      out.steps.push_back(st);
    }
    cur = st.result;
  }
  return out;
}

int length_plus_seq(const System& sys, const SeqDerivation& s) {
  if (sys.plus < 0) throw ConfigError("length requires a distinguished +");
  int n = 0;
  Formula cur = s.start;
  TheorySubset gp = sys.plus_subset();
  for (auto& st : s.steps) {
    if (st.rule == kEqRule) {
      if (!equal(sys.sig, sys.th, cur, st.result, gp)) ++n;
    } else {
      ++n;
    }
    cur = st.result;
  }
  return n;
}

int length_plus(const System& sys, const Derivation& d) {
  return length_plus_seq(sys, sequentialize(d));
}

// ---------------------------------------------------------------------------
// Documents

namespace {

struct SexpTok {
  const std::string& text;
  size_t i = 0;
  explicit SexpTok(const std::string& t) : text(t) {}
  std::optional<std::string> next() {
    while (i < text.size() && isspace((unsigned char)text[i])) ++i;
    if (i >= text.size()) return std::nullopt;
    if (text[i] == '(' || text[i] == ')') return std::string(1, text[i++]);
    std::string tok;
    while (i < text.size() && !isspace((unsigned char)text[i]) && text[i] != '(' && text[i] != ')')
      tok += text[i++];
    return tok;
  }
};

}  // namespace

std::string render_derivation(const System& sys, const Derivation& d) {
  switch (d->kind) {
    case DerivNode::Leaf:
      return "(form " + sys.sig.render(d->form) + ")";
    case DerivNode::Infer:
      return "(step " + d->rule + " " + render_derivation(sys, d->up) + " " +
             render_derivation(sys, d->down) + ")";
    case DerivNode::Comp:
      return "(comp " + sys.sig.conn_info(d->conn).name + " " + render_derivation(sys, d->left) +
             " " + render_derivation(sys, d->right) + ")";
  }
  throw Error("bad derivation node");
}

Derivation parse_derivation(const System& sys, const std::string& text) {
  SexpTok tz(text);
  std::vector<std::string> toks;
  while (auto t = tz.next()) toks.push_back(*t);
  size_t pos = 0;
  auto expect = [&](const std::string& t) {
    if (pos >= toks.size() || toks[pos] != t)
      throw ParseError("expected '" + t + "' in derivation document");
    ++pos;
  };
  // re-parse a formula from token span by rendering back to text
  std::function<Formula()> formula = [&]() -> Formula {
    std::string buf;
    int depth = 0;
    size_t start = pos;
    do {
      if (pos >= toks.size()) throw ParseError("unterminated formula");
      if (toks[pos] == "(") ++depth;
      if (toks[pos] == ")") --depth;
      ++pos;
    } while (depth > 0);
    for (size_t k = start; k < pos; ++k) buf += toks[k] + " ";
    return sys.sig.parse(buf);
  };
  std::function<Derivation()> go = [&]() -> Derivation {
    expect("(");
    if (pos >= toks.size()) throw ParseError("truncated derivation document");
    std::string kw = toks[pos++];
    if (kw == "form") {
      Formula f = formula();
      expect(")");
      return d_leaf(f);
    }
    if (kw == "step") {
      if (pos >= toks.size()) throw ParseError("missing rule name");
      std::string rule = toks[pos++];
      Derivation u = go();
      Derivation l = go();
      expect(")");
      return d_infer(u, rule, l);
    }
    if (kw == "comp") {
      if (pos >= toks.size()) throw ParseError("missing connective");
      auto k = sys.sig.connective(toks[pos++]);
      if (!k) throw SemanticError("undeclared connective in derivation document");
      Derivation a = go();
      Derivation b = go();
      expect(")");
      return d_comp(*k, a, b);
    }
    throw ParseError("unknown derivation form '" + kw + "'");
  };
  Derivation d = go();
  if (pos != toks.size()) throw ParseError("trailing tokens after derivation");
  return d;
}

std::string render_sequential(const System& sys, const SeqDerivation& s) {
  std::ostringstream os;
  os << "seq " << sys.name << "\n";
  os << "start " << sys.sig.render(s.start) << "\n";
  for (auto& st : s.steps)
    os << "step " << st.rule << " @" << render_path(st.path) << " " << sys.sig.render(st.result)
       << "\n";
  return os.str();
}

SeqDerivation parse_sequential(const System& sys, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  SeqDerivation out;
  bool have_start = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "seq") continue;  // header; the system is supplied by the caller
    if (kw == "start") {
      std::string rest;
      std::getline(ls, rest);
      out.start = sys.sig.parse(rest);
      have_start = true;
    } else if (kw == "step") {
      std::string rule, at, rest;
      if (!(ls >> rule >> at) || at.empty() || at[0] != '@')
        throw ParseError("expected: step <rule> @<path> <formula>", lineno);
      std::getline(ls, rest);
      out.steps.push_back(SeqStep{rule, parse_path(at.substr(1)), sys.sig.parse(rest)});
    } else {
      throw ParseError("unknown line '" + kw + "' in sequential document", lineno);
    }
  }
  if (!have_start) throw ParseError("sequential document has no start line");
  return out;
}

}  // namespace sa

#include "sa/theory.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

#include "sa/error.hpp"

namespace sa {

TheorySubset TheorySubset::full() {
  TheorySubset g;
  g.all = true;
  return g;
}

TheorySubset TheorySubset::none() { return TheorySubset{}; }

TheorySubset TheorySubset::plus_only(Id plus) {
  TheorySubset g;
  g.conns.insert(plus);
  return g;
}

Formula apply_rewrite(const Signature& sig, const Formula& f, const RewriteStep& step) {
  Formula node = subtree_at(f, step.at);
  const Axiom& ax = step.ax;
  auto bad = [&]() -> Formula { throw Error("rewrite step does not match formula"); };
  Formula out;
  switch (ax.kind) {
    case Axiom::Assoc: {
      if (!step.rev) {  // (X k Y) k Z -> X k (Y k Z)
        if (node->is_leaf() || node->sym != ax.conn) return bad();
        Formula l = node->left;
        if (l->is_leaf() || l->sym != ax.conn) return bad();
        out = mk_app(ax.conn, l->left, mk_app(ax.conn, l->right, node->right));
      } else {  // X k (Y k Z) -> (X k Y) k Z
        if (node->is_leaf() || node->sym != ax.conn) return bad();
        Formula r = node->right;
        if (r->is_leaf() || r->sym != ax.conn) return bad();
        out = mk_app(ax.conn, mk_app(ax.conn, node->left, r->left), r->right);
      }
      break;
    }
    case Axiom::Comm: {
      if (node->is_leaf() || node->sym != ax.conn) return bad();
      out = mk_app(ax.conn, node->right, node->left);
      break;
    }
    case Axiom::UnitL: {  // (u k X) = X
      if (!step.rev) {
        if (node->is_leaf() || node->sym != ax.conn) return bad();
        if (!node->left->is_leaf() || node->left->sym != ax.a) return bad();
        out = node->right;
      } else {
        out = mk_app(ax.conn, mk_const(ax.a), node);
      }
      break;
    }
    case Axiom::UnitR: {  // (X k u) = X
      if (!step.rev) {
        if (node->is_leaf() || node->sym != ax.conn) return bad();
        if (!node->right->is_leaf() || node->right->sym != ax.a) return bad();
        out = node->left;
      } else {
        out = mk_app(ax.conn, node, mk_const(ax.a));
      }
      break;
    }
    case Axiom::Assign: {  // a k b = c
      if (!step.rev) {
        if (node->is_leaf() || node->sym != ax.conn) return bad();
        if (!node->left->is_leaf() || node->left->sym != ax.a) return bad();
        if (!node->right->is_leaf() || node->right->sym != ax.b) return bad();
        out = mk_const(ax.c);
      } else {
        if (!node->is_leaf() || node->sym != ax.c) return bad();
        out = mk_app(ax.conn, mk_const(ax.a), mk_const(ax.b));
      }
      break;
    }
    case Axiom::Identify: {  // a = b
      if (!step.rev) {
        if (!node->is_leaf() || node->sym != ax.a) return bad();
        out = mk_const(ax.b);
      } else {
        if (!node->is_leaf() || node->sym != ax.b) return bad();
        out = mk_const(ax.a);
      }
      break;
    }
  }
  return replace_at(f, step.at, out);
}

void Theory::add_assignment(Id conn, Id a, Id b, Id c) {
  auto it = assign_.find({conn, a, b});
  if (it != assign_.end() && it->second != c)
    throw SemanticError("conflicting constant assignments declared");
  assign_[{conn, a, b}] = c;
}

void Theory::add_identification(Id a, Id b) {
  if (a == b) return;
  for (auto& [x, y] : ident_)
    if ((x == a && y == b) || (x == b && y == a)) return;
  ident_.push_back({a, b});
}

std::optional<Id> Theory::assignment(Id conn, Id a, Id b) const {
  auto it = assign_.find({conn, a, b});
  if (it == assign_.end()) return std::nullopt;
  return it->second;
}

void Theory::finalize(const Signature& sig) {
  // Close under negation.
  {
    auto snapshot = assign_;
    for (auto& [key, c] : snapshot) {
      Id dk = sig.dual_conn(key[0]);
      add_assignment(dk, sig.dual_const(key[1]), sig.dual_const(key[2]), sig.dual_const(c));
    }
    auto idents = ident_;
    for (auto& [a, b] : idents) add_identification(sig.dual_const(a), sig.dual_const(b));
  }

  int n = sig.num_constants();
  // Identification classes: BFS from the lexicographically smallest member.
  std::vector<std::vector<std::pair<Id, int>>> adj(n);  // (neighbor, ident index)
  for (int i = 0; i < (int)ident_.size(); ++i) {
    auto [a, b] = ident_[i];
    adj[a].push_back({b, i});
    adj[b].push_back({a, i});
  }
  rep_.assign(n, -1);
  rep_trace_.assign(n, {});
  std::vector<bool> seen(n, false);
  for (Id c = 0; c < n; ++c) {
    if (seen[c]) continue;
    // component of c
    std::vector<Id> comp;
    std::deque<Id> q{c};
    seen[c] = true;
    while (!q.empty()) {
      Id x = q.front();
      q.pop_front();
      comp.push_back(x);
      for (auto& [y, _] : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          q.push_back(y);
        }
    }
    Id r = *std::min_element(comp.begin(), comp.end(), [&](Id a, Id b) {
      return sig.const_info(a).name < sig.const_info(b).name;
    });
    // BFS tree from r; trace for x follows parent pointers toward r.
    std::vector<int> parent(n, -1), via(n, -1);
    std::deque<Id> q2{r};
    parent[r] = r;
    while (!q2.empty()) {
      Id x = q2.front();
      q2.pop_front();
      for (auto& [y, e] : adj[x])
        if (parent[y] < 0) {
          parent[y] = x;
          via[y] = e;
          q2.push_back(y);
        }
    }
    for (Id x : comp) {
      rep_[x] = r;
      std::vector<RewriteStep> tr;
      Id cur = x;
      while (cur != r) {
        int e = via[cur];
        auto [a, b] = ident_[e];
        // step rewrites cur into parent[cur]
        bool fwd = (a == cur && b == parent[cur]);
        tr.push_back(RewriteStep{Axiom{Axiom::Identify, -1, a, b, -1}, {}, !fwd});
        cur = parent[cur];
      }
      rep_trace_[x] = std::move(tr);
    }
  }

  // Constant fold closure on representatives; detect ambiguity.
  fold_.clear();
  auto put = [&](std::array<Id, 3> key, Id result, Axiom how) {
    auto it = fold_.find(key);
    if (it != fold_.end()) {
      if (it->second.first != result)
        throw SemanticError(
            "inconsistent constant algebra: '" + sig.const_info(key[1]).name + " " +
            sig.conn_info(key[0]).name + " " + sig.const_info(key[2]).name +
            "' folds to both '" + sig.const_info(it->second.first).name + "' and '" +
            sig.const_info(result).name + "'");
      return;
    }
    fold_[key] = {result, how};
  };
  for (auto& [key, c] : assign_) {
    put({key[0], rep_[key[1]], rep_[key[2]]}, rep_[c],
        Axiom{Axiom::Assign, key[0], key[1], key[2], c});
  }
  for (Id k = 0; k < sig.num_connectives(); ++k) {
    auto u = sig.conn_info(k).unit;
    if (!u) continue;
    Id ru = rep_[*u];
    for (Id a = 0; a < n; ++a) {
      if (rep_[a] != a) continue;
      put({k, a, ru}, a, Axiom{Axiom::UnitR, k, *u, -1, -1});
      put({k, ru, a}, a, Axiom{Axiom::UnitL, k, *u, -1, -1});
    }
  }
  finalized_ = true;
}

std::optional<Id> Theory::fold(const Signature& sig, Id conn, Id a, Id b,
                               std::vector<RewriteStep>* steps) const {
  assert(finalized_);
  auto it = fold_.find({conn, a, b});
  if (it == fold_.end()) return std::nullopt;
  if (steps) {
    const Axiom& how = it->second.second;
    auto emit_unrep = [&](Id raw, Dir d) {
      // leaf currently holds rep(raw); rewrite it into the raw constant
      const auto& tr = rep_trace_.at(raw);
      for (auto rit = tr.rbegin(); rit != tr.rend(); ++rit) {
        RewriteStep s = *rit;
        s.rev = !s.rev;
        s.at = {d};
        steps->push_back(s);
      }
    };
    auto emit_rep = [&](Id raw) {
      for (RewriteStep s : rep_trace_.at(raw)) {
        s.at = {};
        steps->push_back(s);
      }
    };
    switch (how.kind) {
      case Axiom::Assign:
        emit_unrep(how.a, Dir::L);
        emit_unrep(how.b, Dir::R);
        steps->push_back(RewriteStep{how, {}, false});
        emit_rep(how.c);
        break;
      case Axiom::UnitR:
        emit_unrep(how.a, Dir::R);
        steps->push_back(RewriteStep{how, {}, false});
        break;
      case Axiom::UnitL:
        emit_unrep(how.a, Dir::L);
        steps->push_back(RewriteStep{how, {}, false});
        break;
      default:
        throw Error("bad fold entry");
    }
  }
  return it->second.first;
}

namespace {

// In-place canonicalizer working on one whole formula; every mutation is a
// single axiom application recorded in the trace.
struct Canon {
  const Signature& sig;
  const Theory& th;
  const TheorySubset& g;
  Formula work;
  std::vector<RewriteStep>* trace;

  void step(RewriteStep s) {
    work = apply_rewrite(sig, work, s);
    if (trace) trace->push_back(s);
  }
  void steps_at(const std::vector<RewriteStep>& ss, const Path& base) {
    for (RewriteStep s : ss) {
      Path p = base;
      p.insert(p.end(), s.at.begin(), s.at.end());
      s.at = p;
      step(s);
    }
  }
  Formula at(const Path& p) const { return subtree_at(work, p); }

  static Path child(Path p, Dir d) {
    p.push_back(d);
    return p;
  }

  void to_rep(const Path& p) {
    if (!g.allows_identify()) return;
    Formula f = at(p);
    if (!f->is_leaf() || f->is_hole()) return;
    steps_at(th.rep_trace(f->sym), p);
  }

  // Tries to fold the constant-constant node at p; true if it became a leaf.
  bool try_fold(const Path& p) {
    Formula f = at(p);
    if (f->is_leaf()) return true;
    Id k = f->sym;
    if (!g.allows_conn(k)) return false;
    if (!f->left->is_leaf() || !f->right->is_leaf()) return false;
    if (f->left->is_hole() || f->right->is_hole()) return false;
    Id x = f->left->sym, y = f->right->sym;
    if (g.allows_identify()) {
      std::vector<RewriteStep> ss;
      auto r = th.fold(sig, k, x, y, &ss);
      if (!r) return false;
      steps_at(ss, p);
      return true;
    }
    // Raw mode: direct assignment or literal unit only.
    if (auto z = th.assignment(k, x, y)) {
      step(RewriteStep{Axiom{Axiom::Assign, k, x, y, *z}, p, false});
      return true;
    }
    auto u = sig.conn_info(k).unit;
    if (u && y == *u) {
      step(RewriteStep{Axiom{Axiom::UnitR, k, *u, -1, -1}, p, false});
      return true;
    }
    if (u && x == *u) {
      step(RewriteStep{Axiom{Axiom::UnitL, k, *u, -1, -1}, p, false});
      return true;
    }
    return false;
  }

  bool is_unit_leaf(Id k, const Formula& f) const {
    auto u = sig.conn_info(k).unit;
    if (!u || !f->is_leaf() || f->is_hole()) return false;
    if (f->sym == *u) return true;
    return g.allows_identify() && th.rep(f->sym) == th.rep(*u);
  }

  // Rewrites the unit-class leaf at p into the literal unit constant of k.
  void to_literal_unit(Id k, const Path& p) {
    Id u = *sig.conn_info(k).unit;
    Formula f = at(p);
    if (f->sym == u) return;
    // f holds rep(u); walk rep_trace(u) backwards
    const auto& tr = th.rep_trace(u);
    for (auto it = tr.rbegin(); it != tr.rend(); ++it) {
      RewriteStep s = *it;
      s.rev = !s.rev;
      s.at = p;
      step(s);
    }
  }

  // Element i of a right-nested n-element spine lives at p R^i L, the last
  // one at p R^(n-2) R.
  static Path elem_path(const Path& p, int i, int n) {
    Path q = p;
    if (i < n - 1) {
      for (int j = 0; j < i; ++j) q.push_back(Dir::R);
      q.push_back(Dir::L);
    } else {
      for (int j = 0; j < n - 2; ++j) q.push_back(Dir::R);
      q.push_back(Dir::R);
    }
    return q;
  }
  static Path spine_node(const Path& p, int i) {
    Path q = p;
    for (int j = 0; j < i; ++j) q.push_back(Dir::R);
    return q;
  }

  // Flattens the k-spine at p into right-nested form.
  void flatten(Id k, const Path& p) {
    Path cur = p;
    while (true) {
      Formula f = at(cur);
      if (f->is_leaf() || f->sym != k) break;
      while (true) {
        Formula g2 = at(cur);
        if (g2->left->is_leaf() || g2->left->sym != k) break;
        step(RewriteStep{Axiom{Axiom::Assoc, k, -1, -1, -1}, cur, false});
      }
      cur.push_back(Dir::R);
    }
  }

  std::vector<Formula> elements(Id k, const Path& p) const {
    std::vector<Formula> es;
    Formula f = at(p);
    while (!f->is_leaf() && f->sym == k) {
      es.push_back(f->left);
      f = f->right;
    }
    es.push_back(f);
    return es;
  }

  // Drops element i (a unit-class leaf) from an n-element spine at p.
  void drop_elem(Id k, const Path& p, int i, int n) {
    assert(n >= 2);
    if (i < n - 1) {
      Path node = spine_node(p, i);
      to_literal_unit(k, child(node, Dir::L));
      step(RewriteStep{Axiom{Axiom::UnitL, k, *sig.conn_info(k).unit, -1, -1}, node, false});
    } else {
      Path node = spine_node(p, n - 2);
      to_literal_unit(k, child(node, Dir::R));
      step(RewriteStep{Axiom{Axiom::UnitR, k, *sig.conn_info(k).unit, -1, -1}, node, false});
    }
  }

  // Swaps adjacent elements i and i+1 of an n-element spine at p.
  void swap_elems(Id k, const Path& p, int i, int n) {
    if (i + 1 == n - 1) {
      step(RewriteStep{Axiom{Axiom::Comm, k, -1, -1, -1}, spine_node(p, i), false});
      return;
    }
    Path node = spine_node(p, i);
    step(RewriteStep{Axiom{Axiom::Assoc, k, -1, -1, -1}, node, true});
    step(RewriteStep{Axiom{Axiom::Comm, k, -1, -1, -1}, child(node, Dir::L), false});
    step(RewriteStep{Axiom{Axiom::Assoc, k, -1, -1, -1}, node, false});
  }

  // Folds adjacent constant elements i, i+1; true on success.
  bool fold_adjacent(Id k, const Path& p, int i, int n) {
    if (i + 1 == n - 1) {
      return try_fold(spine_node(p, i));
    }
    Path node = spine_node(p, i);
    // probe first: fold must exist before we reassociate
    Formula a = at(elem_path(p, i, n)), b = at(elem_path(p, i + 1, n));
    if (!a->is_leaf() || !b->is_leaf()) return false;
    bool can = false;
    if (g.allows_identify())
      can = th.fold(sig, k, a->sym, b->sym).has_value();
    else {
      can = th.assignment(k, a->sym, b->sym).has_value();
      auto u = sig.conn_info(k).unit;
      if (u && (a->sym == *u || b->sym == *u)) can = true;
    }
    if (!can) return false;
    step(RewriteStep{Axiom{Axiom::Assoc, k, -1, -1, -1}, node, true});
    bool ok = try_fold(child(node, Dir::L));
    assert(ok);
    (void)ok;
    return true;
  }

  void canon_assoc_node(Id k, const Path& p) {
    const auto& info = sig.conn_info(k);
    bool changed = true;
    int guard = 0;
    while (changed) {
      if (++guard > 10000) throw Error("canonicalization failed to stabilize");
      changed = false;
      if (at(p)->is_leaf() || at(p)->sym != k) return;
      flatten(k, p);
      auto es = elements(k, p);
      int n = (int)es.size();
      // unit drops
      if (info.unit) {
        for (int i = 0; i < n; ++i) {
          if (n >= 2 && is_unit_leaf(k, es[i])) {
            drop_elem(k, p, i, n);
            changed = true;
            break;
          }
        }
        if (changed) continue;
      }
      // adjacent constant folds
      for (int i = 0; i + 1 < n; ++i) {
        if (es[i]->is_leaf() && es[i + 1]->is_leaf() && fold_adjacent(k, p, i, n)) {
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // sort for commutative connectives (bubble, stable on renders)
      if (info.comm) {
        for (int i = 0; i + 1 < n; ++i) {
          if (sig.render(es[i]) > sig.render(es[i + 1])) {
            swap_elems(k, p, i, n);
            changed = true;
            break;
          }
        }
      }
    }
  }

  void canon_node(const Path& p) {
    Formula f = at(p);
    if (f->is_leaf()) return;
    Id k = f->sym;
    if (!g.allows_conn(k)) return;
    const auto& info = sig.conn_info(k);
    if (info.assoc) {
      canon_assoc_node(k, p);
      return;
    }
    // non-associative: unit drops then a possible constant fold
    int guard = 0;
    while (true) {
      if (++guard > 1000) throw Error("canonicalization failed to stabilize");
      Formula cur = at(p);
      if (cur->is_leaf() || cur->sym != k) return;
      if (info.unit && is_unit_leaf(k, cur->right)) {
        to_literal_unit(k, child(p, Dir::R));
        step(RewriteStep{Axiom{Axiom::UnitR, k, *info.unit, -1, -1}, p, false});
        continue;
      }
      if (info.unit && is_unit_leaf(k, cur->left)) {
        to_literal_unit(k, child(p, Dir::L));
        step(RewriteStep{Axiom{Axiom::UnitL, k, *info.unit, -1, -1}, p, false});
        continue;
      }
      if (try_fold(p)) continue;
      return;
    }
  }

  void run(const Path& p) {
    Formula f = at(p);
    if (f->is_leaf()) {
      to_rep(p);
      return;
    }
    run(child(p, Dir::L));
    run(child(p, Dir::R));
    canon_node(p);
  }
};

}  // namespace

Formula canonicalize(const Signature& sig, const Theory& th, const Formula& f,
                     const TheorySubset& g, std::vector<RewriteStep>* trace) {
  if (!th.finalized()) throw Error("theory not finalized");
  if (contains_hole(f)) throw Error("cannot canonicalize a context");
  Canon c{sig, th, g, f, trace};
  c.run({});
  return c.work;
}

bool equal(const Signature& sig, const Theory& th, const Formula& x, const Formula& y,
           const TheorySubset& g) {
  return identical(canonicalize(sig, th, x, g), canonicalize(sig, th, y, g));
}

std::vector<std::pair<Path, Formula>> literal_plus_factors(const Formula& f, Id plus) {
  std::vector<std::pair<Path, Formula>> out;
  std::function<void(const Formula&, Path)> go = [&](const Formula& g, Path p) {
    if (!g->is_leaf() && g->sym == plus) {
      Path l = p, r = p;
      l.push_back(Dir::L);
      r.push_back(Dir::R);
      go(g->left, l);
      go(g->right, r);
    } else {
      out.push_back({p, g});
    }
  };
  go(f, {});
  return out;
}

std::vector<Formula> plus_factors(const Signature& sig, const Theory& th, const Formula& f,
                                  Id plus) {
  if (plus < 0) throw ConfigError("no distinguished weak connective declared");
  Formula c = canonicalize(sig, th, f, TheorySubset::plus_only(plus));
  auto u = sig.conn_info(plus).unit;
  if (u && c->is_leaf() && c->sym == *u) return {};
  std::vector<Formula> out;
  for (auto& [p, g] : literal_plus_factors(c, plus)) out.push_back(g);
  return out;
}

Formula fold_plus(const Signature& sig, const std::vector<Formula>& factors, Id plus) {
  auto u = sig.conn_info(plus).unit;
  if (factors.empty()) {
    if (!u) throw ConfigError("weak connective has no unit");
    return mk_const(*u);
  }
  Formula acc = factors.back();
  for (int i = (int)factors.size() - 2; i >= 0; --i) acc = mk_app(plus, factors[i], acc);
  return acc;
}

}  // namespace sa

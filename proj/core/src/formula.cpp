#include "sa/formula.hpp"

#include "sa/error.hpp"

namespace sa {

std::string render_path(const Path& p) {
  if (p.empty()) return ".";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += (p[i] == Dir::L ? 'l' : 'r');
  }
  return s;
}

Path parse_path(const std::string& s) {
  Path p;
  if (s == "." || s.empty()) return p;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == 'l')
      p.push_back(Dir::L);
    else if (c == 'r')
      p.push_back(Dir::R);
    else
      throw ParseError("bad path character '" + std::string(1, c) + "' in '" + s + "'");
    ++i;
    if (i < s.size()) {
      if (s[i] != '.') throw ParseError("expected '.' in path '" + s + "'");
      ++i;
    }
  }
  return p;
}

Formula mk_const(Id c) { return std::make_shared<FormulaNode>(FormulaNode{c, nullptr, nullptr}); }

Formula mk_app(Id conn, Formula l, Formula r) {
  return std::make_shared<FormulaNode>(FormulaNode{conn, std::move(l), std::move(r)});
}

Formula mk_hole() { return mk_const(kHole); }

bool identical(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->sym != b->sym || a->is_leaf() != b->is_leaf()) return false;
  if (a->is_leaf()) return true;
  return identical(a->left, b->left) && identical(a->right, b->right);
}

int node_count(const Formula& f) {
  if (f->is_leaf()) return 1;
  return 1 + node_count(f->left) + node_count(f->right);
}

bool contains_hole(const Formula& f) {
  if (f->is_leaf()) return f->is_hole();
  return contains_hole(f->left) || contains_hole(f->right);
}

Formula subtree_at(const Formula& f, const Path& p) {
  Formula cur = f;
  for (Dir d : p) {
    if (cur->is_leaf()) throw Error("path walks off a leaf");
    cur = (d == Dir::L) ? cur->left : cur->right;
  }
  return cur;
}

Formula replace_at(const Formula& f, const Path& p, const Formula& sub) {
  if (p.empty()) return sub;
  if (f->is_leaf()) throw Error("path walks off a leaf");
  Path rest(p.begin() + 1, p.end());
  if (p.front() == Dir::L) return mk_app(f->sym, replace_at(f->left, rest, sub), f->right);
  return mk_app(f->sym, f->left, replace_at(f->right, rest, sub));
}

bool path_prefix(const Path& pre, const Path& p) {
  if (pre.size() > p.size()) return false;
  for (size_t i = 0; i < pre.size(); ++i)
    if (pre[i] != p[i]) return false;
  return true;
}

bool path_disjoint(const Path& a, const Path& b) { return !path_prefix(a, b) && !path_prefix(b, a); }

FormulaContext context_at(const Formula& f, const Path& p) {
  subtree_at(f, p);  // validates the path
  return FormulaContext{replace_at(f, p, mk_hole()), p};
}

Formula plug(const FormulaContext& ctx, const Formula& f) {
  return replace_at(ctx.shape, ctx.hole_path, f);
}

}  // namespace sa

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sa {

using Id = int32_t;
constexpr Id kHole = -1;  // reserved leaf symbol for contexts

enum class Dir : uint8_t { L, R };
using Path = std::vector<Dir>;

std::string render_path(const Path& p);   // "l.r", "." for the root
Path parse_path(const std::string& s);

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

// Binary tree over constants; an App's symbol is a connective id, a leaf's a
// constant id. Immutable, shared freely.
struct FormulaNode {
  Id sym;
  Formula left;   // null for leaves
  Formula right;  // null for leaves
  bool is_leaf() const { return !left; }
  bool is_hole() const { return is_leaf() && sym == kHole; }
};

Formula mk_const(Id c);
Formula mk_app(Id conn, Formula l, Formula r);
Formula mk_hole();

bool identical(const Formula& a, const Formula& b);  // syntactic equality
int node_count(const Formula& f);
bool contains_hole(const Formula& f);

Formula subtree_at(const Formula& f, const Path& p);
Formula replace_at(const Formula& f, const Path& p, const Formula& sub);
bool path_disjoint(const Path& a, const Path& b);
bool path_prefix(const Path& pre, const Path& p);  // pre is a (non-strict) prefix of p

// Formula with exactly one hole. `shape` contains the single kHole leaf at
// `hole_path`; plugging is replace_at.
struct FormulaContext {
  Formula shape;
  Path hole_path;
};

FormulaContext context_at(const Formula& f, const Path& p);  // carve a hole at p
Formula plug(const FormulaContext& ctx, const Formula& f);

}  // namespace sa

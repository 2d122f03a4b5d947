#include "sa/signature.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "sa/error.hpp"

namespace sa {

static void check_token(const std::string& name) {
  if (name.empty()) throw SemanticError("empty token");
  for (char c : name)
    if (c == '(' || c == ')' || isspace((unsigned char)c))
      throw SemanticError("token '" + name + "' contains whitespace or parentheses");
}

Id Signature::add_constant(const std::string& name) {
  check_token(name);
  if (const_by_name_.count(name) || conn_by_name_.count(name))
    throw SemanticError("symbol '" + name + "' declared twice");
  Id id = (Id)consts_.size();
  consts_.push_back(ConstantInfo{name, -1});
  const_by_name_[name] = id;
  return id;
}

Id Signature::add_connective(const ConnectiveInfo& info) {
  check_token(info.name);
  if (const_by_name_.count(info.name) || conn_by_name_.count(info.name))
    throw SemanticError("symbol '" + info.name + "' declared twice");
  Id id = (Id)conns_.size();
  conns_.push_back(info);
  conn_by_name_[info.name] = id;
  return id;
}

void Signature::set_constant_dual(Id a, Id b) {
  consts_.at(a).dual = b;
  consts_.at(b).dual = a;
}

std::optional<Id> Signature::constant(const std::string& name) const {
  auto it = const_by_name_.find(name);
  if (it == const_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<Id> Signature::connective(const std::string& name) const {
  auto it = conn_by_name_.find(name);
  if (it == conn_by_name_.end()) return std::nullopt;
  return it->second;
}

Id Signature::dual_const(Id c) const {
  Id d = consts_.at(c).dual;
  if (d < 0) throw SemanticError("constant '" + consts_.at(c).name + "' has no negation");
  return d;
}

Id Signature::strong_of(Id k) const {
  const auto& i = conns_.at(k);
  if (i.polarity == Polarity::Both) return k;
  return i.polarity == Polarity::Strong ? k : i.dual;
}

Id Signature::weak_of(Id k) const {
  const auto& i = conns_.at(k);
  if (i.polarity == Polarity::Both) return k;
  return i.polarity == Polarity::Weak ? k : i.dual;
}

void Signature::validate() const {
  for (Id c = 0; c < (Id)consts_.size(); ++c) {
    Id d = consts_[c].dual;
    if (d < 0) throw SemanticError("constant '" + consts_[c].name + "' has no negation");
    if (consts_.at(d).dual != c)
      throw SemanticError("constant negation is not involutive at '" + consts_[c].name + "'");
  }
  for (Id k = 0; k < (Id)conns_.size(); ++k) {
    const auto& i = conns_[k];
    if (i.dual < 0) throw SemanticError("connective '" + i.name + "' has no dual");
    if (conns_.at(i.dual).dual != k)
      throw SemanticError("connective duality is not involutive at '" + i.name + "'");
    bool self = i.dual == k;
    if (self != (i.polarity == Polarity::Both))
      throw SemanticError("connective '" + i.name +
                          "' must have polarity 'both' exactly when self-dual");
    if (!self) {
      const auto& d = conns_.at(i.dual);
      if (d.polarity == i.polarity)
        throw SemanticError("dual pair '" + i.name + "'/'" + d.name +
                            "' must have one strong and one weak member");
    }
    if (i.is_atom && (i.assoc || i.comm || i.unit))
      throw SemanticError("atom '" + i.name + "' must be non-associative, non-commutative and non-unitary");
    if (i.unit) {
      Id u = *i.unit;
      Id du = dual_const(u);
      const auto& d = conns_.at(i.dual);
      if (!d.unit || *d.unit != du)
        throw SemanticError("unit of '" + conns_.at(i.dual).name + "' must be the negation of the unit of '" +
                            i.name + "'");
    }
  }
}

Formula Signature::negate(const Formula& f) const {
  if (f->is_leaf()) {
    if (f->is_hole()) throw SemanticError("cannot negate a context hole");
    return mk_const(dual_const(f->sym));
  }
  return mk_app(dual_conn(f->sym), negate(f->left), negate(f->right));
}

std::string Signature::render(const Formula& f) const {
  if (f->is_leaf()) {
    if (f->is_hole()) return "hole";
    return consts_.at(f->sym).name;
  }
  return "(" + render(f->left) + " " + conns_.at(f->sym).name + " " + render(f->right) + ")";
}

namespace {

struct Tokenizer {
  const std::string& text;
  size_t i = 0;
  int line = 1, col = 1;

  explicit Tokenizer(const std::string& t) : text(t) {}

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  std::optional<std::string> next() {
    while (i < text.size() && isspace((unsigned char)text[i])) bump(text[i]);
    if (i >= text.size()) return std::nullopt;
    char c = text[i];
    if (c == '(' || c == ')') {
      bump(c);
      return std::string(1, c);
    }
    std::string tok;
    while (i < text.size() && !isspace((unsigned char)text[i]) && text[i] != '(' && text[i] != ')') {
      tok += text[i];
      bump(text[i]);
    }
    return tok;
  }
};

}  // namespace

Formula Signature::parse(const std::string& text) const {
  Tokenizer tz(text);
  std::vector<std::string> toks;
  while (auto t = tz.next()) toks.push_back(*t);
  size_t pos = 0;

  auto leaf = [&](const std::string& tok) -> Formula {
    if (tok == "hole") return mk_hole();
    if (auto c = constant(tok)) return mk_const(*c);
    throw SemanticError("undeclared constant '" + tok + "'");
  };

  std::function<Formula()> go = [&]() -> Formula {
    if (pos >= toks.size()) throw ParseError("unexpected end of formula");
    std::string tok = toks[pos++];
    if (tok != "(") {
      if (tok == ")") throw ParseError("unexpected ')'");
      return leaf(tok);
    }
    Formula l = go();
    if (pos >= toks.size()) throw ParseError("unexpected end of formula");
    std::string conn = toks[pos++];
    auto k = connective(conn);
    if (!k) throw SemanticError("undeclared connective '" + conn + "'");
    Formula r = go();
    if (pos >= toks.size() || toks[pos] != ")") throw ParseError("expected ')'");
    ++pos;
    return mk_app(*k, l, r);
  };

  Formula f = go();
  if (pos != toks.size()) throw ParseError("trailing tokens after formula");
  return f;
}

}  // namespace sa

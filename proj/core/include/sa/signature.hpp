#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sa/formula.hpp"

namespace sa {

enum class Polarity { Strong, Weak, Both };

struct ConstantInfo {
  std::string name;
  Id dual = -1;  // involutive
};

struct ConnectiveInfo {
  std::string name;
  Id dual = -1;  // involutive; == own id for self-dual
  Polarity polarity = Polarity::Both;
  bool is_atom = false;
  bool assoc = false;
  bool comm = false;
  std::optional<Id> unit;  // a constant id
};

// Declared constants and connectives with their duals and attributes.
class Signature {
 public:
  Id add_constant(const std::string& name);
  Id add_connective(const ConnectiveInfo& info);
  void set_constant_dual(Id a, Id b);

  std::optional<Id> constant(const std::string& name) const;
  std::optional<Id> connective(const std::string& name) const;
  const ConstantInfo& const_info(Id c) const { return consts_.at(c); }
  const ConnectiveInfo& conn_info(Id k) const { return conns_.at(k); }
  ConnectiveInfo& conn_info_mut(Id k) { return conns_.at(k); }
  int num_constants() const { return (int)consts_.size(); }
  int num_connectives() const { return (int)conns_.size(); }

  Id dual_const(Id c) const;
  Id dual_conn(Id k) const { return conns_.at(k).dual; }
  // The strong / weak connective of k's dual pair; k itself when self-dual.
  Id strong_of(Id k) const;
  Id weak_of(Id k) const;

  // Checks involutions, polarity pairing and atom attribute restrictions.
  void validate() const;

  Formula negate(const Formula& f) const;

  std::string render(const Formula& f) const;
  Formula parse(const std::string& text) const;

 private:
  std::vector<ConstantInfo> consts_;
  std::vector<ConnectiveInfo> conns_;
  std::map<std::string, Id> const_by_name_;
  std::map<std::string, Id> conn_by_name_;
};

}  // namespace sa

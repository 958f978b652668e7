#include "ncres/var_context.hpp"

#include <algorithm>

#include "ncres/errors.hpp"

namespace ncres {

std::string_view toString(VarKind kind) {
  switch (kind) {
    case VarKind::Free:
      return "free";
    case VarKind::Divisorial:
      return "divisorial";
    case VarKind::Parameter:
      return "parameter";
  }
  return "free";
}

std::optional<VarKind> parseVarKind(std::string_view text) {
  if (text == "free") return VarKind::Free;
  if (text == "divisorial" || text == "div") return VarKind::Divisorial;
  if (text == "parameter" || text == "param") return VarKind::Parameter;
  return std::nullopt;
}

VarContext::VarContext(std::vector<std::string> names, std::vector<VarKind> kinds)
    : names_(std::move(names)), kinds_(std::move(kinds)) {
  if (names_.size() != kinds_.size()) throw Error("VarContext: names and kinds differ in length");
  if (names_.size() > kMaxVars) throw UnsupportedError("VarContext: more than 64 variables");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error("VarContext: empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw Error("VarContext: duplicate variable '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> VarContext::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t VarContext::require(std::string_view name) const {
  auto i = index(name);
  if (!i) throw Error("unknown variable '" + std::string(name) + "'");
  return *i;
}

VarMask VarContext::parameterMask() const {
  VarMask m = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (kinds_[i] == VarKind::Parameter) m |= bit(i);
  }
  return m;
}

VarMask VarContext::divisorialMask() const {
  VarMask m = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (kinds_[i] == VarKind::Divisorial) m |= bit(i);
  }
  return m;
}

VarMask VarContext::coordinateMask() const {
  VarMask m = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (kinds_[i] != VarKind::Parameter) m |= bit(i);
  }
  return m;
}

VarContext VarContext::withVariable(std::string name, VarKind kind) const {
  auto names = names_;
  auto kinds = kinds_;
  names.push_back(std::move(name));
  kinds.push_back(kind);
  return VarContext(std::move(names), std::move(kinds));
}

VarContext VarContext::withKind(std::size_t i, VarKind kind) const {
  auto kinds = kinds_;
  kinds.at(i) = kind;
  return VarContext(names_, std::move(kinds));
}

std::string VarContext::freshName(std::string_view stem) const {
  for (std::size_t n = 1;; ++n) {
    std::string candidate = std::string(stem) + std::to_string(n);
    if (!index(candidate)) return candidate;
  }
}

}  // namespace ncres

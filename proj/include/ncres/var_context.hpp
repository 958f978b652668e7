#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncres {

enum class VarKind { Free, Divisorial, Parameter };

std::string_view toString(VarKind kind);
std::optional<VarKind> parseVarKind(std::string_view text);

/// Bit i set <=> variable i belongs to the set.
using VarMask = std::uint64_t;

inline bool contains(VarMask mask, std::size_t var) { return ((mask >> var) & 1U) != 0; }
inline VarMask bit(std::size_t var) { return VarMask{1} << var; }

/// Ordered list of variables, each free, divisorial (a component of the SNC
/// divisor E) or a parameter (a coordinate of the coefficient ring, never a
/// center variable). The order fixes exponent-vector layout and term order.
class VarContext {
 public:
  static constexpr std::size_t kMaxVars = 64;

  VarContext() = default;
  VarContext(std::vector<std::string> names, std::vector<VarKind> kinds);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  VarKind kind(std::size_t i) const { return kinds_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  bool isParameter(std::size_t i) const { return kind(i) == VarKind::Parameter; }
  bool isDivisorial(std::size_t i) const { return kind(i) == VarKind::Divisorial; }

  VarMask parameterMask() const;
  VarMask divisorialMask() const;
  /// Free and divisorial variables: the ones that count toward orders.
  VarMask coordinateMask() const;

  /// Copy with one more variable appended.
  VarContext withVariable(std::string name, VarKind kind) const;
  VarContext withKind(std::size_t i, VarKind kind) const;
  /// A name not yet used, of the form `<stem><n>` with the smallest n >= 1.
  std::string freshName(std::string_view stem) const;

  bool operator==(const VarContext&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
};

}  // namespace ncres

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opgp {

enum class RingKind { Commutative, Weyl };

/// Describes Q[x_1..x_d] or the Weyl algebra Q[x_1..x_d]<D_1..D_d>.
///
/// Generators are numbered 0..d-1 for the base variables and, in the Weyl
/// case, d..2d-1 for the matching partial derivatives.
class RingSpec {
 public:
  static std::shared_ptr<const RingSpec> commutative(std::vector<std::string> variables);
  /// Partial names default to "D" + variable name.
  static std::shared_ptr<const RingSpec> weyl(std::vector<std::string> variables,
                                              std::vector<std::string> partials = {});

  [[nodiscard]] RingKind kind() const { return kind_; }
  [[nodiscard]] bool is_weyl() const { return kind_ == RingKind::Weyl; }
  [[nodiscard]] std::size_t dimension() const { return dimension_; }
  [[nodiscard]] std::size_t num_generators() const { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(std::size_t generator) const { return names_.at(generator); }
  [[nodiscard]] std::vector<std::string> base_names() const;
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const RingSpec& other) const = default;

 private:
  RingSpec(RingKind kind, std::size_t dimension, std::vector<std::string> names);

  RingKind kind_;
  std::size_t dimension_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Throws RingMismatch unless both rings are equal.
void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view context);

}  // namespace opgp

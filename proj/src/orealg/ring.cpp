#include "opgp/orealg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "opgp/errors.hpp"

namespace opgp {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

RingSpec::RingSpec(RingKind kind, std::size_t dimension, std::vector<std::string> names)
    : kind_(kind), dimension_(dimension), names_(std::move(names)) {
  if (dimension_ == 0) throw std::invalid_argument("ring dimension must be at least 1");
  const std::size_t expected = kind_ == RingKind::Weyl ? 2 * dimension_ : dimension_;
  if (names_.size() != expected) throw std::invalid_argument("wrong number of generator names");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw std::invalid_argument("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate generator name '" + n + "'");
  }
}

std::shared_ptr<const RingSpec> RingSpec::commutative(std::vector<std::string> variables) {
  const std::size_t d = variables.size();
  return std::shared_ptr<const RingSpec>(new RingSpec(RingKind::Commutative, d, std::move(variables)));
}

std::shared_ptr<const RingSpec> RingSpec::weyl(std::vector<std::string> variables,
                                               std::vector<std::string> partials) {
  const std::size_t d = variables.size();
  if (partials.empty()) {
    for (const auto& v : variables) partials.push_back("D" + v);
  }
  if (partials.size() != d) throw std::invalid_argument("Weyl ring needs one partial per variable");
  std::vector<std::string> names = std::move(variables);
  names.insert(names.end(), partials.begin(), partials.end());
  return std::shared_ptr<const RingSpec>(new RingSpec(RingKind::Weyl, d, std::move(names)));
}

std::vector<std::string> RingSpec::base_names() const {
  return {names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(dimension_)};
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b, std::string_view context) {
  if (!same_ring(a, b)) throw RingMismatch(std::string(context) + ": operands live in different rings");
}

}  // namespace opgp

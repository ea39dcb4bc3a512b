#ifndef REEMBED_RING_HPP
#define REEMBED_RING_HPP

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reembed/term.hpp"

namespace reembed {

/// The tuple of named indeterminates X = (x_1, ..., x_n) of a polynomial ring.
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i])) throw std::invalid_argument("invalid indeterminate name '" + names_[i] + "'");
      if (!index_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate indeterminate name '" + names_[i] + "'");
    }
  }

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Indet i) const { return names_.at(i); }

  std::optional<Indet> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Indet index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("unknown indeterminate '" + std::string(name) + "'");
    return *i;
  }

  std::vector<Indet> indices_of(const std::vector<std::string>& names) const {
    std::vector<Indet> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(index_of(n));
    return out;
  }

  static bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Indet> index_;
};

}  // namespace reembed

#endif  // REEMBED_RING_HPP

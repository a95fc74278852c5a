#pragma once

#include <compare>
#include <string>
#include <vector>

namespace conewalk {

/// Integer partition with non-increasing positive parts (trailing zeros are
/// trimmed on construction).
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError on negative or increasing parts.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int weight() const noexcept { return weight_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }
  /// i-th part (0-based), zero past the end.
  int operator[](int i) const noexcept {
    return i < length() ? parts_[static_cast<std::size_t>(i)] : 0;
  }
  Partition conjugate() const;
  std::string to_string() const;

  bool operator==(const Partition& o) const noexcept { return parts_ == o.parts_; }
  /// Lexicographic order on the parts.
  std::strong_ordering operator<=>(const Partition& o) const noexcept {
    return parts_ <=> o.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All partitions of k with at most max_parts parts, in reverse
/// lexicographic order: (3), (2,1), (1,1,1).
std::vector<Partition> partitions_of_weight(int k, int max_parts);

}  // namespace conewalk

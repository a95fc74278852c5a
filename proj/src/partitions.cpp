#include "conewalk/partitions.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "conewalk/errors.hpp"

namespace conewalk {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw DomainError("partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw DomainError(fmt::format("partition parts must be non-increasing: ({})",
                                    fmt::join(parts_, ",")));
    }
    weight_ += parts_[i];
  }
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : static_cast<std::size_t>(parts_[0]), 0);
  for (int part : parts_) {
    for (int j = 0; j < part; ++j) ++c[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const { return fmt::format("({})", fmt::join(parts_, ",")); }

namespace {

void fill_partitions(int remaining, int max_part, int slots, std::vector<int>& prefix,
                     std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (slots == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    // the remaining slots must be able to absorb what is left
    if (static_cast<long>(part) * slots < remaining) break;
    prefix.push_back(part);
    fill_partitions(remaining - part, part, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of_weight(int k, int max_parts) {
  if (k < 0) throw DomainError("partition weight must be nonnegative");
  if (max_parts < 1) throw DomainError("max_parts must be positive");
  std::vector<Partition> out;
  std::vector<int> prefix;
  fill_partitions(k, k, max_parts, prefix, out);
  return out;
}

}  // namespace conewalk

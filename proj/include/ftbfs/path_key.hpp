#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftbfs/graph.hpp"

namespace ftbfs {

// Composite weight of a path: hop count, then the edge-id set read as the
// integer sum of 2^id (edge id i weighs 2^-(m-i) as a fraction of one hop).
// The highest differing id decides, so lower ids are preferred.
class PathKey {
 public:
  PathKey() = default;
  explicit PathKey(EdgeId num_edges)
      : bits_((static_cast<std::size_t>(num_edges) + 63) / 64, 0) {}

  int hops() const { return hops_; }

  bool contains(EdgeId id) const {
    auto w = static_cast<std::size_t>(id) / 64;
    return w < bits_.size() && ((bits_[w] >> (id % 64)) & 1U);
  }

  void extend(EdgeId id) {
    if (id < 0) throw std::invalid_argument("negative edge id");
    auto w = static_cast<std::size_t>(id) / 64;
    if (w >= bits_.size()) bits_.resize(w + 1, 0);
    if ((bits_[w] >> (id % 64)) & 1U) {
      throw std::logic_error("edge " + std::to_string(id) +
                             " already on path");
    }
    bits_[w] |= std::uint64_t{1} << (id % 64);
    ++hops_;
  }

  PathKey extended(EdgeId id) const {
    PathKey k = *this;
    k.extend(id);
    return k;
  }

  std::vector<EdgeId> edge_ids() const {
    std::vector<EdgeId> out;
    out.reserve(hops_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      for (std::uint64_t b = bits_[w]; b != 0; b &= b - 1) {
        out.push_back(static_cast<EdgeId>(w * 64 + std::countr_zero(b)));
      }
    }
    return out;
  }

  friend std::strong_ordering operator<=>(const PathKey& a,
                                          const PathKey& b) {
    if (auto c = a.hops_ <=> b.hops_; c != 0) return c;
    return compare_sets(a, kNoEdge, b, kNoEdge);
  }
  friend bool operator==(const PathKey& a, const PathKey& b) {
    return (a <=> b) == 0;
  }

  // Order of a+{ea} versus b+{eb} without building either key. Both keys
  // must have the same hop count and the added ids must be absent.
  static std::strong_ordering compare_extended(const PathKey& a, EdgeId ea,
                                               const PathKey& b, EdgeId eb) {
    if (auto c = a.hops_ <=> b.hops_; c != 0) return c;
    return compare_sets(a, ea, b, eb);
  }

 private:
  static std::uint64_t word_with(const PathKey& k, EdgeId extra,
                                 std::size_t w) {
    std::uint64_t x = w < k.bits_.size() ? k.bits_[w] : 0;
    if (extra >= 0 && static_cast<std::size_t>(extra) / 64 == w) {
      x |= std::uint64_t{1} << (extra % 64);
    }
    return x;
  }

  static std::strong_ordering compare_sets(const PathKey& a, EdgeId ea,
                                           const PathKey& b, EdgeId eb) {
    std::size_t words = std::max(a.bits_.size(), b.bits_.size());
    auto need = [](EdgeId e) {
      return e < 0 ? std::size_t{0} : static_cast<std::size_t>(e) / 64 + 1;
    };
    words = std::max({words, need(ea), need(eb)});
    for (std::size_t w = words; w-- > 0;) {
      std::uint64_t x = word_with(a, ea, w);
      std::uint64_t y = word_with(b, eb, w);
      if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
  }

  int hops_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ftbfs

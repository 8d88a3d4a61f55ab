#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qpn {

using NodeIndex = std::size_t;

// Fixed-size set of node indices backed by 64-bit words.
class NodeMask {
 public:
  NodeMask() = default;
  explicit NodeMask(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  [[nodiscard]] bool test(NodeIndex i) const noexcept {
    return i < size_ && ((words_[i / 64] >> (i % 64)) & 1u) != 0;
  }
  NodeMask& set(NodeIndex i) noexcept {
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
    return *this;
  }
  NodeMask& reset(NodeIndex i) noexcept {
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    return *this;
  }

  [[nodiscard]] std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  [[nodiscard]] bool none() const noexcept { return count() == 0; }

  [[nodiscard]] bool is_subset_of(const NodeMask& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    }
    return true;
  }

  NodeMask& operator|=(const NodeMask& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  NodeMask& operator&=(const NodeMask& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }

  [[nodiscard]] std::vector<NodeIndex> indices() const {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < size_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const NodeMask&, const NodeMask&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline NodeMask operator|(NodeMask a, const NodeMask& b) { return a |= b; }
inline NodeMask operator&(NodeMask a, const NodeMask& b) { return a &= b; }

}  // namespace qpn

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace beamselect {

/// Binary node-membership vector s in {0,1}^K. Node k corresponds to bit
/// index k-1. Masks are available for K <= 64 so exhaustive enumeration can
/// work on plain integers.
class SelectionVector {
 public:
  SelectionVector() = default;
  explicit SelectionVector(std::size_t k) : bits_(k, false) {}

  static SelectionVector from_mask(std::size_t k, std::uint64_t mask) {
    if (k > 64) throw std::invalid_argument("SelectionVector: mask form limited to K <= 64");
    SelectionVector s(k);
    for (std::size_t i = 0; i < k; ++i) s.bits_[i] = (mask >> i) & 1u;
    return s;
  }

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_[i] = value; }

  std::size_t count() const {
    std::size_t n = 0;
    for (bool b : bits_) n += b;
    return n;
  }
  bool none() const { return count() == 0; }

  std::uint64_t to_mask() const {
    if (size() > 64) throw std::invalid_argument("SelectionVector: mask form limited to K <= 64");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < size(); ++i)
      if (bits_[i]) mask |= std::uint64_t{1} << i;
    return mask;
  }

  /// Zero-based indices of the selected nodes, ascending.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  friend bool operator==(const SelectionVector&, const SelectionVector&) = default;

 private:
  std::vector<bool> bits_;
};

}  // namespace beamselect

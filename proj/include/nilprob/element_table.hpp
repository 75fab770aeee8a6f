#pragma once

#include <cstdint>
#include <cstring>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilprob/perm.hpp"

namespace nilprob {

using index_type = std::uint32_t;
inline constexpr index_type npos = std::numeric_limits<index_type>::max();

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of permutations of one degree, stored contiguously and addressed by
/// insertion index.  Lookup is by open addressing on the image table.
class ElementTable {
 public:
  explicit ElementTable(std::size_t degree) : degree_(degree) {
    if (degree == 0 || degree > max_degree) throw std::invalid_argument("bad degree");
    rehash(64);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const point_type> operator[](index_type i) const noexcept {
    return {data_.data() + static_cast<std::size_t>(i) * degree_, degree_};
  }

  Permutation element(index_type i) const { return Permutation::from_images((*this)[i]); }

  index_type find(std::span<const point_type> images) const noexcept {
    std::size_t slot = detail::hash_points(images) & mask_;
    while (true) {
      index_type idx = slots_[slot];
      if (idx == npos) return npos;
      if (equal(idx, images)) return idx;
      slot = (slot + 1) & mask_;
    }
  }

  index_type find(const Permutation& p) const noexcept {
    if (p.degree() != degree_) return npos;
    return find(p.images());
  }

  bool contains(const Permutation& p) const noexcept { return find(p) != npos; }

  /// Returns (index, inserted).
  std::pair<index_type, bool> insert(std::span<const point_type> images) {
    if (images.size() != degree_) throw degree_mismatch(images.size(), degree_);
    std::size_t slot = detail::hash_points(images) & mask_;
    while (true) {
      index_type idx = slots_[slot];
      if (idx == npos) break;
      if (equal(idx, images)) return {idx, false};
      slot = (slot + 1) & mask_;
    }
    if (count_ + 1 >= npos) throw budget_exceeded("element table full");
    index_type idx = static_cast<index_type>(count_++);
    data_.insert(data_.end(), images.begin(), images.end());
    slots_[slot] = idx;
    if (2 * count_ > slots_.size()) rehash(slots_.size() * 2);
    return {idx, true};
  }

  std::pair<index_type, bool> insert(const Permutation& p) { return insert(p.images()); }

  void reserve(std::size_t n) {
    data_.reserve(n * degree_);
    std::size_t want = 64;
    while (want < 2 * n + 2) want *= 2;
    if (want > slots_.size()) rehash(want);
  }

  /// Index of a*b (a first); npos if the product is not in the table.
  index_type product(index_type a, index_type b, std::vector<point_type>& scratch) const {
    scratch.resize(degree_);
    auto pa = (*this)[a];
    auto pb = (*this)[b];
    for (std::size_t i = 0; i < degree_; ++i) scratch[i] = pb[pa[i]];
    return find(scratch);
  }

  /// Index of g^-1 x g.
  index_type conjugate(index_type x, index_type g, std::span<const point_type> g_inverse,
                       std::vector<point_type>& scratch) const {
    scratch.resize(degree_);
    auto px = (*this)[x];
    auto pg = (*this)[g];
    for (std::size_t i = 0; i < degree_; ++i) scratch[i] = pg[px[g_inverse[i]]];
    return find(scratch);
  }

  bool commute(index_type a, index_type b) const noexcept {
    auto pa = (*this)[a];
    auto pb = (*this)[b];
    for (std::size_t i = 0; i < degree_; ++i) {
      if (pb[pa[i]] != pa[pb[i]]) return false;
    }
    return true;
  }

  bool less(index_type a, index_type b) const noexcept {
    auto pa = (*this)[a];
    auto pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  }

 private:
  bool equal(index_type idx, std::span<const point_type> images) const noexcept {
    return std::memcmp(data_.data() + static_cast<std::size_t>(idx) * degree_, images.data(),
                       degree_ * sizeof(point_type)) == 0;
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, npos);
    mask_ = capacity - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t slot = detail::hash_points((*this)[static_cast<index_type>(i)]) & mask_;
      while (slots_[slot] != npos) slot = (slot + 1) & mask_;
      slots_[slot] = static_cast<index_type>(i);
    }
  }

  std::size_t degree_;
  std::size_t count_ = 0;
  std::vector<point_type> data_;
  std::vector<index_type> slots_;
  std::size_t mask_ = 0;
};

}  // namespace nilprob

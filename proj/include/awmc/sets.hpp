#pragma once

#include <cstdint>
#include <vector>

namespace awmc {

/// Set of atom indices as a bitmask. Atom vocabularies are capped at 31
/// entries, so every subset fits a 32-bit word and powerset loops are plain
/// integer ranges.
class AtomSet {
 public:
  constexpr AtomSet() = default;

  static constexpr AtomSet from_raw(std::uint32_t bits) { return AtomSet(bits); }
  static constexpr AtomSet single(int i) { return AtomSet(std::uint32_t{1} << i); }
  static constexpr AtomSet full(int n) {
    return AtomSet(n == 0 ? 0u : (std::uint32_t{1} << n) - 1u);
  }

  constexpr std::uint32_t raw() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(AtomSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr AtomSet with(int i) const { return AtomSet(bits_ | (std::uint32_t{1} << i)); }
  constexpr AtomSet intersect(AtomSet o) const { return AtomSet(bits_ & o.bits_); }
  constexpr AtomSet unite(AtomSet o) const { return AtomSet(bits_ | o.bits_); }
  constexpr AtomSet minus(AtomSet o) const { return AtomSet(bits_ & ~o.bits_); }

  int count() const { return __builtin_popcount(bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(__builtin_ctz(b));
    return out;
  }

  constexpr bool operator==(const AtomSet&) const = default;
  constexpr bool operator<(AtomSet o) const { return bits_ < o.bits_; }

 private:
  explicit constexpr AtomSet(std::uint32_t bits) : bits_(bits) {}
  std::uint32_t bits_ = 0;
};

/// Calls fn on every subset of x, including the empty set and x itself.
/// Order: descending raw value; deterministic.
template <typename F>
void for_each_subset(AtomSet x, F&& fn) {
  std::uint32_t sub = x.raw();
  while (true) {
    fn(AtomSet::from_raw(sub));
    if (sub == 0) break;
    sub = (sub - 1) & x.raw();
  }
}

/// Set of world indices as a 64-bit mask; worlds are capped at 64.
class WorldSet {
 public:
  constexpr WorldSet() = default;

  static constexpr WorldSet from_raw(std::uint64_t bits) { return WorldSet(bits); }
  static constexpr WorldSet single(int i) { return WorldSet(std::uint64_t{1} << i); }
  static constexpr WorldSet full(int n) {
    return WorldSet(n == 0 ? 0u : (~std::uint64_t{0}) >> (64 - n));
  }

  constexpr std::uint64_t raw() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr WorldSet with(int i) const { return WorldSet(bits_ | (std::uint64_t{1} << i)); }
  constexpr WorldSet intersect(WorldSet o) const { return WorldSet(bits_ & o.bits_); }
  constexpr WorldSet unite(WorldSet o) const { return WorldSet(bits_ | o.bits_); }

  int count() const { return __builtin_popcountll(bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(__builtin_ctzll(b));
    return out;
  }

  constexpr bool operator==(const WorldSet&) const = default;

 private:
  explicit constexpr WorldSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

}  // namespace awmc

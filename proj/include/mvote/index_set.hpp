#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace mvote {

using VoterId = std::size_t;
using CandidateId = std::size_t;

/// Dense subset of {0, ..., universe-1}. The tag keeps voter and candidate
/// sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe, false) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members)
      : bits_(universe, false) {
    for (std::size_t x : members) insert(x);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    s.bits_.assign(universe, true);
    return s;
  }

  static IndexSet from_mask(std::size_t universe, unsigned long long mask) {
    IndexSet s(universe);
    for (std::size_t x = 0; x < universe; ++x) {
      if ((mask >> x) & 1ULL) s.bits_[x] = true;
    }
    return s;
  }

  std::size_t universe() const { return bits_.size(); }

  bool contains(std::size_t x) const {
    check(x);
    return bits_[x];
  }
  void insert(std::size_t x) {
    check(x);
    bits_[x] = true;
  }
  void erase(std::size_t x) {
    check(x);
    bits_[x] = false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (bool b : bits_) c += b ? 1 : 0;
    return c;
  }
  bool empty() const { return count() == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < bits_.size(); ++x) {
      if (bits_[x]) out.push_back(x);
    }
    return out;
  }

  IndexSet complement() const {
    IndexSet s(bits_.size());
    for (std::size_t x = 0; x < bits_.size(); ++x) s.bits_[x] = !bits_[x];
    return s;
  }

  IndexSet& operator|=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t x = 0; x < bits_.size(); ++x) bits_[x] = bits_[x] || o.bits_[x];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    same_universe(o);
    for (std::size_t x = 0; x < bits_.size(); ++x) bits_[x] = bits_[x] && o.bits_[x];
    return *this;
  }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }

  bool is_subset_of(const IndexSet& o) const {
    same_universe(o);
    for (std::size_t x = 0; x < bits_.size(); ++x) {
      if (bits_[x] && !o.bits_[x]) return false;
    }
    return true;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  void check(std::size_t x) const {
    if (x >= bits_.size()) throw std::out_of_range("index outside set universe");
  }
  void same_universe(const IndexSet& o) const {
    if (o.bits_.size() != bits_.size()) throw std::invalid_argument("set universes differ");
  }

  std::vector<bool> bits_;
};

struct VoterTag {};
struct CandidateTag {};
using VoterSet = IndexSet<VoterTag>;
using CandidateSet = IndexSet<CandidateTag>;

}  // namespace mvote

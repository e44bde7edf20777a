#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace clt {

/// Membership bit set over the points of a finite ground set or cloud.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

inline PointSet from_bytes(std::span<const std::uint8_t> bytes) {
  PointSet out(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i)
    if (bytes[i]) out.set(i);
  return out;
}

inline std::vector<std::uint8_t> to_bytes(const PointSet &s) {
  std::vector<std::uint8_t> out(s.size(), 0);
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
    out[i] = 1;
  return out;
}

inline std::vector<std::size_t> members_of(const PointSet &s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
    out.push_back(i);
  return out;
}

} // namespace clt

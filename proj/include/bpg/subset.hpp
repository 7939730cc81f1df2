#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpg {

// Item subsets are bitmasks: bit i set means vendor i's item is in the set.
// The engine enumerates all 2^n subsets in several places, so n is capped.
using ItemSet = std::uint32_t;

inline constexpr int kMaxItems = 12;

inline ItemSet full_set(int n) { return (ItemSet{1} << n) - 1; }

inline bool contains(ItemSet s, int item) { return (s >> item) & 1u; }

inline ItemSet with_item(ItemSet s, int item) { return s | (ItemSet{1} << item); }

inline ItemSet without_item(ItemSet s, int item) { return s & ~(ItemSet{1} << item); }

inline int set_size(ItemSet s) { return std::popcount(s); }

inline bool is_subset(ItemSet s, ItemSet t) { return (s & ~t) == 0; }

inline std::vector<int> set_items(ItemSet s) {
  std::vector<int> items;
  for (int i = 0; s >> i; ++i) {
    if (contains(s, i)) items.push_back(i);
  }
  return items;
}

inline std::string format_set(ItemSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : set_items(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

/// Parses "0,1,3" into a bitmask; items must lie in [0, n).
inline ItemSet parse_set(const std::string& text, int n) {
  ItemSet s = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    int item = std::stoi(text.substr(pos, comma - pos));
    if (item < 0 || item >= n) throw std::invalid_argument("item index out of range: " + std::to_string(item));
    s = with_item(s, item);
    pos = comma + 1;
  }
  return s;
}

}  // namespace bpg

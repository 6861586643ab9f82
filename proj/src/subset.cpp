#include "hassett/subset.hpp"

#include <algorithm>
#include <stdexcept>

namespace hassett {

Subset subset_from_labels(const std::vector<int>& labels) {
  Subset s = 0;
  for (int l : labels) {
    if (l < 1 || static_cast<std::size_t>(l) > kMaxMarkings) {
      throw std::out_of_range("marking label out of range: " + std::to_string(l));
    }
    s |= Subset{1} << (l - 1);
  }
  return s;
}

Subset subset_of(std::initializer_list<int> labels) {
  return subset_from_labels(std::vector<int>(labels));
}

std::vector<std::size_t> indices_of(Subset s) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(subset_size(s)));
  while (s != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::vector<int> labels_of(Subset s) {
  std::vector<int> out;
  for (std::size_t i : indices_of(s)) out.push_back(static_cast<int>(i) + 1);
  return out;
}

bool subset_less(Subset a, Subset b) {
  const int sa = subset_size(a);
  const int sb = subset_size(b);
  if (sa != sb) return sa < sb;
  // Equal sizes: the list with the smaller first differing element wins,
  // i.e. the lowest bit of the symmetric difference belongs to it.
  const Subset diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

std::string format_subset(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int l : labels_of(s)) {
    if (!first) out += ',';
    out += std::to_string(l);
    first = false;
  }
  return out + "}";
}

}  // namespace hassett

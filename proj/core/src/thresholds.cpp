#include "achset/thresholds.hpp"

namespace achset {

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Interval: return "Interval";
    case RegionLabel::Cantorval: return "Cantorval";
    case RegionLabel::Cantor: return "Cantor";
    case RegionLabel::NotFiniteUnion: return "NotFiniteUnion";
    case RegionLabel::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

RegionLabel region_label_from_string(std::string_view name) {
  for (RegionLabel label : {RegionLabel::Interval, RegionLabel::Cantorval, RegionLabel::Cantor,
                            RegionLabel::NotFiniteUnion, RegionLabel::Indeterminate}) {
    if (name == to_string(label)) return label;
  }
  throw std::invalid_argument("unknown region label: '" + std::string(name) + "'");
}

}  // namespace achset

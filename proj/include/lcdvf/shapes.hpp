#pragma once

#include <string>
#include <vector>

#include "lcdvf/types.hpp"

namespace lcdvf::shapes {

// Synthetic masks on a square S x S frame. Geometry scales with S.
BinaryMask disk(int size);
BinaryMask rectangle(int size);
BinaryMask star(int size);
BinaryMask u_shape(int size);
BinaryMask annulus_cut_blob(int size);

struct Fixture {
  std::string name;  // e.g. "star_64"
  std::string shape;
  int size = 0;
  bool convex = false;
  BinaryMask mask;
};

// disk, rectangle, star, u_shape, annulus_cut_blob at 64 and 128.
std::vector<Fixture> suite();

BinaryMask by_name(const std::string& shape, int size);

}  // namespace lcdvf::shapes

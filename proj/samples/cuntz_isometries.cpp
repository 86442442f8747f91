// Build the (2,1) decomposition of the Cuntz unit space, turn it into a pair
// of isometries in the convolution algebra and print the relations they meet.

#include <iostream>

#include "ample/ample.hpp"

int main() {
  using namespace ample;
  const Groupoid g(cuntz(2));
  const auto w = cuntz_witness(g, "", 2);
  if (const auto v = verify_witness(g, w); !v) {
    std::cerr << "witness rejected: " << v.reason << "\n";
    return 1;
  }
  const auto iso = isometries_from_witness(g, w);
  const auto unit = unit_indicator(Clopen::whole(g.space()));
  std::cout << "f*f = 1_X: " << std::boolalpha << iso.f_isometry << "\n"
            << "g*g = 1_X: " << iso.g_isometry << "\n"
            << "ff* + gg* = 1_X: " << (iso.range_sum == unit) << "\n";
  std::cout << io::dump(io::write(w));
  return iso.ok() ? 0 : 1;
}

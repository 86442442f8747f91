// Invariant states of the odometer at increasing depth, then the trace they
// induce on a couple of convolution products.

#include <iostream>

#include "ample/ample.hpp"

int main() {
  using namespace ample;
  const Groupoid g(odometer(3));
  for (int depth = 0; depth <= 3; ++depth) {
    const auto cs = build_constraints(g, depth);
    const auto s = solve_state(cs);
    std::cout << "depth " << depth << (cs.partial() ? " (truncated)" : "") << ":";
    for (std::size_t i = 0; i < s.state->cells.size(); ++i)
      std::cout << " mu(" << s.state->cells[i].word << ")=" << to_string(s.state->values[i]);
    std::cout << "\n";
  }
  const auto cs = build_constraints(g, 3);
  const TraceFunctional tau = trace_from_state(cs, *solve_state(cs).state);
  const auto a = ConvElement::from_terms(g, {{gen_word(0), Cell::cylinder("1"), rational(1)}});
  const auto b = ConvElement::from_terms(g, {{gen_word(0, true), Cell::cylinder("2"), rational(3)},
                                            {Word{}, Cell::cylinder("21"), rational(-1, 2)}});
  std::cout << "tau(1_X) = " << to_string(tau(unit_indicator(Clopen::whole(g.space()))))
            << "\ntau(a*b) = " << to_string(tau(conv(g, a, b))) << ", tau(b*a) = " << to_string(tau(conv(g, b, a)))
            << "\n";
}

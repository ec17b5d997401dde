// Head curve R(s) and the critical values for a few vorticity distributions.
// Usage: critical_scan ["omega text" ...]
#include <cstdio>
#include <string>
#include <vector>

#include "vortwave/vortwave.hpp"

using namespace vortwave;

static void scan(const std::string& text) {
  const Flow flow(parse_vorticity(text));
  const auto a = analyze(flow);
  std::printf("omega = %s  class (%s)\n", text.c_str(), to_string(a.classification.condition));
  std::printf("  s0 = %.10g  s_c = %.10g  r_c = %.10g  d_c = %.10g\n", a.s0, a.s_c, a.r_c, a.d_c);
  if (a.r0) std::printf("  d0 = %.10g  r0 = %.10g\n", a.d0, *a.r0);
  else std::printf("  d0 = inf\n");

  // Start a little above s0 (class (i) diverges there) and walk past s_c.
  const double lo = a.s0 + 0.02 * (a.s_c - a.s0) + 1e-3;
  const double hi = 2.0 * a.s_c + 0.5;
  std::printf("  %10s %12s %12s %12s\n", "s", "d(s)", "R(s)", "Phi(1;s)");
  for (int k = 0; k <= 12; ++k) {
    const double s = lo + (hi - lo) * k / 12.0;
    std::printf("  %10.5f %12.6f %12.6f %12.6f\n", s, depth(flow, s), head(flow, s), phi(flow, s, 1.0));
  }

  const double r = a.r_c + 0.1;
  const auto pair = conjugates(flow, a, r);
  std::printf("  r = %.6g (%s): ", r, to_string(pair.regime));
  if (pair.s_plus) std::printf("s+ = %.8g d+ = %.8g, ", *pair.s_plus, *pair.d_plus);
  std::printf("s- = %.8g d- = %.8g\n\n", pair.s_minus, pair.d_minus);
}

int main(int argc, char** argv) {
  std::vector<std::string> flows{"constant 0", "constant 2", "constant -2", "poly -3 6"};
  if (argc > 1) flows.assign(argv + 1, argv + argc);
  try {
    for (const auto& f : flows) scan(f);
  } catch (const Error& e) {
    std::fprintf(stderr, "critical_scan: %s\n", e.what());
    return 1;
  }
  return 0;
}

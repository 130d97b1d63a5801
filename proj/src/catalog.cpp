#include "nonnoether/catalog.hpp"

namespace nonnoether {

namespace {

constexpr std::string_view kAaOscillator = R"(# One degree of freedom in action-angle coordinates. The flow is d/dth and
# E = I^2 d/dI commutes with it while L_E omega = 2I omega.
name = "aa-oscillator"
description = "harmonic oscillator in action-angle form, E = I^2 d/dI"
n = 1
coordinates = ["th", "I"]
omega = "canonical"
h = "I"
E = ["0", "I^2"]
role = "non-noether"
x0 = [0.3, 0.5]

[domain]
lo = [-3.0, 0.2]
hi = [3.0, 1.2]
)";

constexpr std::string_view kAa2Oscillator = R"(# Two uncoupled oscillators in action-angle form; the recursion operator has
# the doubled spectrum {2 I1, 2 I2}.
name = "aa-2oscillator"
description = "two action-angle oscillators, E = I1^2 d/dI1 + I2^2 d/dI2"
n = 2
coordinates = ["th1", "th2", "I1", "I2"]
omega = "canonical"
h = "I1 + I2"
E = ["0", "0", "I1^2", "I2^2"]
role = "non-noether"
x0 = [0.1, 0.2, 0.5, 1.0]

[domain]
lo = [-3.0, -3.0, 0.2, 0.2]
hi = [3.0, 3.0, 1.2, 1.2]
)";

constexpr std::string_view kQpOscillator = R"(name = "qp-oscillator"
description = "harmonic oscillator in (q, p); no symmetry generator"
n = 1
coordinates = ["q", "p"]
omega = "canonical"
h = "q^2/2 + p^2/2"
x0 = [1.0, 0.0]

[domain]
lo = -1.0
hi = 1.0
)";

constexpr std::string_view kQpDilation = R"(# Negative control: E = q d/dq does not commute with X_h = (p, -q).
name = "qp-oscillator-dilation"
description = "harmonic oscillator with the non-symmetry E = q d/dq"
n = 1
coordinates = ["q", "p"]
omega = "canonical"
h = "q^2/2 + p^2/2"
E = ["q", "0"]
role = "negative-control"
x0 = [1.0, 0.0]

[domain]
lo = -1.0
hi = 1.0
)";

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"aa-oscillator", "n=1 action-angle oscillator with E = I^2 d/dI", kAaOscillator},
      {"aa-2oscillator", "n=2 action-angle oscillators with E = I1^2 d/dI1 + I2^2 d/dI2", kAa2Oscillator},
      {"qp-oscillator", "canonical (q, p) oscillator, structural gates only", kQpOscillator},
      {"qp-oscillator-dilation", "negative control, E = q d/dq on the (q, p) oscillator", kQpDilation},
  };
  return entries;
}

const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

SystemSpecDocument catalog_document(std::string_view name) {
  const CatalogEntry* e = find_catalog_entry(name);
  if (!e) throw SpecFormatError("unknown catalog system '" + std::string(name) + "'");
  return parse_spec_toml(e->source);
}

}  // namespace nonnoether

#pragma once

#include <iosfwd>

#include "infbf/bayes_factor.hpp"

namespace infbf::service {

/// `n,bf01_a,bf01_b` rows followed by a `# crossover: a -> b` or `# no crossover` line.
void write_curve_csv(std::ostream& out, const Bf01Curve& curve);

}  // namespace infbf::service

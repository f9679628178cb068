#include "infbf/service/curve.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

namespace infbf::service {
namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_curve_csv(std::ostream& out, const Bf01Curve& curve) {
  out << "n,bf01_a,bf01_b\n";
  for (const auto& p : curve.points) {
    out << p.n_per_group << ',' << format_double(std::exp(p.log_bf01_a)) << ','
        << format_double(std::exp(p.log_bf01_b)) << '\n';
  }
  if (curve.crossover_n) {
    out << "# crossover: " << *curve.crossover_n - 1 << " -> " << *curve.crossover_n << '\n';
  } else {
    out << "# no crossover\n";
  }
}

}  // namespace infbf::service

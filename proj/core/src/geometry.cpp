#include "rhilab/geometry.hpp"

#include "rhilab/errors.hpp"

namespace rhilab {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_))
    throw DomainError("interval needs lo < hi, got (" + lo_.str() + ", " + hi_.str() + ")");
}

Cube::Cube(std::vector<Rational> lo, Rational side) : lo_(std::move(lo)), side_(std::move(side)) {
  if (lo_.empty()) throw DomainError("cube dimension must be at least 1");
  if (side_.sign() <= 0) throw DomainError("cube side must be positive");
}

}  // namespace rhilab

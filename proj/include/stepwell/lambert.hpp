#pragma once

namespace stepwell::specfun {

/// Principal-branch Lambert W for x >= 0, Halley iteration seeded at
/// log(1+x); W e^W = x to ~1e-15 relative.  Throws std::domain_error for
/// x < 0.
double lambert_w(double x);

} // namespace stepwell::specfun

#pragma once

#include <iosfwd>

namespace corrcalc {

/// Runs one subcommand and writes its JSON report to `out`. Returns 0 on
/// success, 1 when validation fails and 2 for usage errors.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Residual tolerance, 1e-9 unless CORRCALC_PRECISION overrides it.
double residual_tolerance();

} // namespace corrcalc

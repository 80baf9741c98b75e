#pragma once

/// \file
/// The curvlab command line, callable in-process for tests.
///
///   curvlab list
///   curvlab classify   <target> [--samples N] [--vectors K] [--seed S] [--tol T] [--json]
///   curvlab identities <target> [--which g1,g2,c(1),kappa-mu(1,0),consequences,classify] ...
///   curvlab report     <target> ...
///
/// Exit codes: 0 when every required verdict holds, 1 when one fails, 2 on
/// input errors. classify and report require the structure axioms and the
/// construction relations (cone, hypersurface, lift and warped oracles); class
/// memberships and curvature identities are reported without being required.
/// identities requires every identity it was asked for.

#include "curvlab/check_report.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace curvlab {

struct ReportLine {
  IdentityReport check;
  bool required = true;
};

struct Report {
  std::string target;
  std::uint64_t seed = 42;
  double tolerance = 1e-7;
  std::vector<ReportLine> lines;
  std::vector<std::string> notes;  // table only, e.g. the classes a structure belongs to

  bool ok() const;
};

/// {target, seed, tolerance, checks: [{tag, residual, verdict, witness?}]},
/// two-space indentation, trailing newline.
std::string to_json(const Report& r);
std::string to_table(const Report& r);

/// args excludes the program name. CURVLAB_SEED replaces the default seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvlab

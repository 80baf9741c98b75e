#pragma once

/// \file
/// Curvature identities of almost Hermitian (K1-K3) and almost contact
/// metric (G1-G3, C(alpha)) structures, as residuals LHS - RHS.
///
/// Chart carriers are swept over sampled points with quadruples drawn from
/// consecutive groups of four sample vectors. Frame carriers are swept over
/// every basis quadruple and report exact rational residuals.

#include "curvlab/check_report.hpp"
#include "curvlab/structure_point.hpp"
#include "curvlab/structures.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace curvlab {

enum class Identity { K1, K2, K3, G1, G2, G3 };

std::string identity_tag(Identity id);
std::optional<Identity> identity_from_tag(std::string_view tag);
bool is_hermitian_identity(Identity id);

/// Residual of one identity at (X, Y, Z, W). For Hermitian identities the
/// structure's phi slot holds J.
template <class S>
S identity_residual(Identity id, const StructurePoint<S>& sp, const Vec<S>& x, const Vec<S>& y, const Vec<S>& z,
                    const Vec<S>& w) {
  const S r = sp.R(x, y, z, w);
  switch (id) {
    case Identity::K1:
      return r - sp.R(x, y, sp.Phi(z), sp.Phi(w));
    case Identity::K2:
      return r - (sp.R(sp.Phi(x), y, z, sp.Phi(w)) + sp.R(x, sp.Phi(y), z, sp.Phi(w)) +
                  sp.R(x, y, sp.Phi(z), sp.Phi(w)));
    case Identity::K3:
      return r - sp.R(sp.Phi(x), sp.Phi(y), sp.Phi(z), sp.Phi(w));
    case Identity::G1: {
      auto pz = sp.Phi(z), pw = sp.Phi(w);
      S rhs = sp.inner(y, pw) * sp.inner(x, pz) - sp.inner(x, pw) * sp.inner(y, pz) + sp.inner(x, w) * sp.inner(y, z) -
              sp.inner(y, w) * sp.inner(x, z);
      return sp.R(x, y, pz, pw) - r - rhs;
    }
    case Identity::G2: {
      auto pw = sp.Phi(w);
      S rhs = sp.R(sp.Phi(x), y, z, pw) + sp.R(x, sp.Phi(y), z, pw) + sp.R(x, y, sp.Phi(z), pw) +
              sp.inner(x, z) * sp.Eta(w) * sp.Eta(y) - sp.inner(z, y) * sp.Eta(x) * sp.Eta(w);
      return r - rhs;
    }
    case Identity::G3: {
      S ex = sp.Eta(x), ey = sp.Eta(y), ez = sp.Eta(z), ew = sp.Eta(w);
      S rhs = sp.R(sp.Phi(x), sp.Phi(y), sp.Phi(z), sp.Phi(w)) + sp.inner(x, z) * ew * ey - sp.inner(z, y) * ex * ew +
              sp.inner(y, w) * ex * ez - sp.inner(x, w) * ey * ez;
      return r - rhs;
    }
  }
  return r;
}

/// C(alpha): R(X,Y,Z,W) = R(X,Y,phi Z,phi W)
///   - alpha { -g(X,Z)g(Y,W) + g(X,W)g(Y,Z) + g(X,phi Z)g(Y,phi W) - g(X,phi W)g(Y,phi Z) }.
/// Sasakian manifolds satisfy C(1).
template <class S>
S c_alpha_residual(const S& alpha, const StructurePoint<S>& sp, const Vec<S>& x, const Vec<S>& y, const Vec<S>& z,
                   const Vec<S>& w) {
  auto pz = sp.Phi(z), pw = sp.Phi(w);
  S brace = -sp.inner(x, z) * sp.inner(y, w) + sp.inner(x, w) * sp.inner(y, z) + sp.inner(x, pz) * sp.inner(y, pw) -
            sp.inner(x, pw) * sp.inner(y, pz);
  return sp.R(x, y, z, w) - sp.R(x, y, pz, pw) + alpha * brace;
}

/// Residual of a four-argument relation, evaluated by the sweeps below.
template <class S>
using QuadFn = std::function<S(const StructurePoint<S>&, const Vec<S>&, const Vec<S>&, const Vec<S>&, const Vec<S>&)>;

/// Structure data at each sample point, computed once and shared by all checks.
struct PreparedSamples {
  SampleSet samples;
  std::vector<StructurePoint<double>> points;
};

PreparedSamples prepare(const AlmostContactStructure& s, const SampleSet& samples);
PreparedSamples prepare(const AlmostHermitianStructure& s, const SampleSet& samples);

IdentityReport sweep(std::string tag, const PreparedSamples& ps, const QuadFn<double>& f, double tol);
IdentityReport sweep(std::string tag, const FrameStructure& s, const QuadFn<Rational>& f);

IdentityReport check_identity(Identity id, const PreparedSamples& ps, double tol);
IdentityReport check_identity(Identity id, const FrameStructure& s);

IdentityReport check_c_alpha(double alpha, const PreparedSamples& ps, double tol);
IdentityReport check_c_alpha(const Rational& alpha, const FrameStructure& s);

/// Consequences of G1, G2 or G3 restricted as in their derivations (arguments
/// made horizontal where the consequence asks for it). Tags are prefixed by
/// the identity tag, e.g. "g2.k8".
std::vector<IdentityReport> consequence_suite(Identity id, const PreparedSamples& ps, double tol);
std::vector<IdentityReport> consequence_suite(Identity id, const FrameStructure& s);

}  // namespace curvlab

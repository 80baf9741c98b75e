#include "curvlab/identities.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace curvlab {

namespace {

struct TagEntry {
  Identity id;
  const char* tag;
};
constexpr std::array<TagEntry, 6> kTags{{{Identity::K1, "k1"},
                                         {Identity::K2, "k2"},
                                         {Identity::K3, "k3"},
                                         {Identity::G1, "g1"},
                                         {Identity::G2, "g2"},
                                         {Identity::G3, "g3"}}};

template <class S>
using Quad = QuadFn<S>;

// Consequence residuals, generic over the scalar. "h" marks arguments that
// are replaced by their horizontal parts first.
template <class S>
struct Consequences {
  static S xi_y_xi_w(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>&, const Vec<S>& w) {
    auto hy = sp.horizontal(y), hw = sp.horizontal(w);
    return sp.R(sp.xi, hy, sp.xi, hw) - sp.inner(hy, hw);
  }
  static S xi_y_z_w(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>& z, const Vec<S>& w) {
    return sp.R(sp.xi, sp.horizontal(y), sp.horizontal(z), sp.horizontal(w));
  }
  static S xi_y_phiz_phiw(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>& z,
                          const Vec<S>& w) {
    return sp.R(sp.xi, sp.horizontal(y), sp.Phi(sp.horizontal(z)), sp.Phi(sp.horizontal(w)));
  }
  static S restricted(Identity id, const StructurePoint<S>& sp, const Vec<S>& x, const Vec<S>& y, const Vec<S>& z,
                      const Vec<S>& w) {
    return identity_residual(id, sp, sp.horizontal(x), sp.horizontal(y), sp.horizontal(z), sp.horizontal(w));
  }
  // R(xi,Y,Z,phi W) = eta(Z) g(phi W, Y)
  static S k8(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>& z, const Vec<S>& w) {
    auto pw = sp.Phi(w);
    return sp.R(sp.xi, y, z, pw) - sp.Eta(z) * sp.inner(pw, y);
  }
  // R(xi,phi Y,xi,phi W) = g(phi W, phi Y)
  static S k11(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>&, const Vec<S>& w) {
    auto py = sp.Phi(y), pw = sp.Phi(w);
    return sp.R(sp.xi, py, sp.xi, pw) - sp.inner(pw, py);
  }
  // R(xi,phi Y,phi Z,phi W) = 0
  static S k12(const StructurePoint<S>& sp, const Vec<S>&, const Vec<S>& y, const Vec<S>& z, const Vec<S>& w) {
    return sp.R(sp.xi, sp.Phi(y), sp.Phi(z), sp.Phi(w));
  }

  static std::vector<std::pair<std::string, Quad<S>>> suite(Identity id) {
    const std::string p = identity_tag(id) + ".";
    std::vector<std::pair<std::string, Quad<S>>> out;
    out.emplace_back(p + "xi_y_xi_w", xi_y_xi_w);
    out.emplace_back(p + "xi_y_z_w", xi_y_z_w);
    if (id == Identity::G1) out.emplace_back(p + "xi_y_phiz_phiw", xi_y_phiz_phiw);
    if (id == Identity::G2) out.emplace_back(p + "k8", k8);
    if (id == Identity::G3) {
      out.emplace_back(p + "k11", k11);
      out.emplace_back(p + "k12", k12);
    }
    out.emplace_back(p + "restricted", [id](const StructurePoint<S>& sp, const Vec<S>& x, const Vec<S>& y,
                                            const Vec<S>& z, const Vec<S>& w) { return restricted(id, sp, x, y, z, w); });
    return out;
  }
};

void require_contact_identity(Identity id) {
  if (is_hermitian_identity(id)) throw std::invalid_argument("consequence suites exist for g1, g2 and g3 only");
}

}  // namespace

std::string identity_tag(Identity id) {
  for (const auto& e : kTags)
    if (e.id == id) return e.tag;
  return "?";
}

std::optional<Identity> identity_from_tag(std::string_view tag) {
  for (const auto& e : kTags)
    if (tag == e.tag) return e.id;
  return std::nullopt;
}

bool is_hermitian_identity(Identity id) { return id == Identity::K1 || id == Identity::K2 || id == Identity::K3; }

PreparedSamples prepare(const AlmostContactStructure& s, const SampleSet& samples) {
  s.check_shapes();
  PreparedSamples ps{samples, {}};
  for (const auto& p : samples.points) ps.points.push_back(structure_point(s, geometry_at(s.chart, p)));
  return ps;
}

PreparedSamples prepare(const AlmostHermitianStructure& s, const SampleSet& samples) {
  s.check_shapes();
  PreparedSamples ps{samples, {}};
  for (const auto& p : samples.points) ps.points.push_back(structure_point(s, geometry_at(s.chart, p)));
  return ps;
}

IdentityReport sweep(std::string tag, const PreparedSamples& ps, const QuadFn<double>& f, double tol) {
  IdentityReport r;
  r.tag = std::move(tag);
  r.tolerance = tol;
  for (std::size_t k = 0; k < ps.points.size(); ++k) {
    const auto& vs = ps.samples.vectors[k];
    for (std::size_t a = 0; a + 3 < vs.size(); a += 4) {
      double v = f(ps.points[k], vs[a], vs[a + 1], vs[a + 2], vs[a + 3]);
      Witness w;
      w.point = ps.samples.points[k];
      w.vectors = {vs[a], vs[a + 1], vs[a + 2], vs[a + 3]};
      r.record(std::isnan(v) ? INFINITY : std::abs(v), w);
    }
  }
  return r;
}

IdentityReport sweep(std::string tag, const FrameStructure& s, const QuadFn<Rational>& f) {
  IdentityReport r;
  r.tag = std::move(tag);
  r.tolerance = 0;
  auto sp = s.point();
  const int n = sp.n;
  std::vector<Vec<Rational>> basis;
  for (int i = 0; i < n; ++i) basis.push_back(s.frame.basis(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational v = f(sp, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)],
                         basis[static_cast<std::size_t>(k)], basis[static_cast<std::size_t>(l)]);
          Witness w;
          w.frame_labels = {s.label(i), s.label(j), s.label(k), s.label(l)};
          r.record_exact(v, w);
        }
  return r;
}

IdentityReport check_identity(Identity id, const PreparedSamples& ps, double tol) {
  return sweep(identity_tag(id), ps,
               [id](const StructurePoint<double>& sp, const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                    const Vec<double>& w) { return identity_residual(id, sp, x, y, z, w); },
               tol);
}

IdentityReport check_identity(Identity id, const FrameStructure& s) {
  return sweep(identity_tag(id), s,
               [id](const StructurePoint<Rational>& sp, const Vec<Rational>& x, const Vec<Rational>& y,
                    const Vec<Rational>& z, const Vec<Rational>& w) { return identity_residual(id, sp, x, y, z, w); });
}

IdentityReport check_c_alpha(double alpha, const PreparedSamples& ps, double tol) {
  return sweep("c_alpha", ps,
               [alpha](const StructurePoint<double>& sp, const Vec<double>& x, const Vec<double>& y,
                       const Vec<double>& z, const Vec<double>& w) { return c_alpha_residual(alpha, sp, x, y, z, w); },
               tol);
}

IdentityReport check_c_alpha(const Rational& alpha, const FrameStructure& s) {
  return sweep("c_alpha", s,
               [alpha](const StructurePoint<Rational>& sp, const Vec<Rational>& x, const Vec<Rational>& y,
                       const Vec<Rational>& z, const Vec<Rational>& w) {
                 return c_alpha_residual(alpha, sp, x, y, z, w);
               });
}

std::vector<IdentityReport> consequence_suite(Identity id, const PreparedSamples& ps, double tol) {
  require_contact_identity(id);
  std::vector<IdentityReport> out;
  for (const auto& [tag, f] : Consequences<double>::suite(id)) out.push_back(sweep(tag, ps, f, tol));
  return out;
}

std::vector<IdentityReport> consequence_suite(Identity id, const FrameStructure& s) {
  require_contact_identity(id);
  std::vector<IdentityReport> out;
  for (const auto& [tag, f] : Consequences<Rational>::suite(id)) out.push_back(sweep(tag, s, f));
  return out;
}

}  // namespace curvlab

#include "curvlab/registry.hpp"

#include <cmath>
#include <filesystem>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

std::string q(const Rational& r) { return "(" + to_string(r) + ")"; }

std::pair<Rational, Rational> pythagorean_pair(const std::string& param) {
  auto comma = param.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected c,s but got '" + param + "'");
  Rational c = parse_rational(param.substr(0, comma));
  Rational s = parse_rational(param.substr(comma + 1));
  if (c * c + s * s != 1) throw std::invalid_argument("c^2 + s^2 must be 1 for '" + param + "'");
  return {c, s};
}

Expr theta(const char* text) {
  std::vector<std::string> v{"theta"};
  return parse_expr(text, v);
}

AlmostHermitianStructure flat_r2() {
  return make_hermitian("r2", {"x", "y"}, {}, {"1", "0", "0", "1"}, {"0", "-1", "1", "0"});
}

}  // namespace

AlmostContactStructure flat_cosymplectic(int n) {
  const int d = 2 * n + 1;
  std::vector<std::string> coords;
  for (int i = 1; i <= n; ++i) {
    coords.push_back("x" + std::to_string(i));
    coords.push_back("y" + std::to_string(i));
  }
  coords.push_back("z");
  std::vector<std::string> g(sz(d * d), "0"), phi(sz(d * d), "0"), xi(sz(d), "0"), eta(sz(d), "0");
  for (int i = 0; i < d; ++i) g[sz(i * d + i)] = "1";
  for (int i = 0; i < n; ++i) {
    phi[sz((2 * i + 1) * d + 2 * i)] = "1";
    phi[sz((2 * i) * d + 2 * i + 1)] = "-1";
  }
  xi[sz(d - 1)] = "1";
  eta[sz(d - 1)] = "1";
  return make_contact(n == 1 ? "flat3" : "flat_cosymplectic" + std::to_string(d), coords, {}, g, phi, xi, eta);
}

AlmostContactStructure sasakian_r3() {
  return make_contact("sasakian_r3", {"x", "y", "z"}, {},
                      {"1/4 + y^2/4", "0", "-y/4", "0", "1/4", "0", "-y/4", "0", "1/4"},
                      {"0", "1", "0", "-1", "0", "0", "0", "y", "0"}, {"0", "0", "2"}, {"-y/2", "0", "1/2"});
}

AlmostContactStructure h21_chart(const Rational& c, const Rational& s) {
  // X_i = 2 d_xi, Y_i = 2 (d_yi + x^i d_z), xi = 2 d_z; eta = (dz - x1 dy1 - x2 dy2)/2,
  // g = (dx1^2 + dx2^2 + dy1^2 + dy2^2)/4 + eta^2.
  const std::string C = q(c), S = q(s);
  std::vector<std::string> g{"1/4", "0", "0",              "0",              "0",      //
                             "0",   "1/4", "0",            "0",              "0",      //
                             "0",   "0", "1/4 + x1^2/4",   "x1*x2/4",        "-x1/4",  //
                             "0",   "0", "x1*x2/4",        "1/4 + x2^2/4",   "-x2/4",  //
                             "0",   "0", "-x1/4",          "-x2/4",          "1/4"};
  const std::string mC = "-" + C, mS = "-" + S;
  std::vector<std::string> phi{"0", "0", mC, mS, "0",  //
                               "0", "0", mS, C,  "0",  //
                               C,   S,   "0", "0", "0",  //
                               S,   mC,  "0", "0", "0",  //
                               C + "*x1 + " + S + "*x2", S + "*x1 - " + C + "*x2", "0", "0", "0"};
  std::vector<Interval> dom(5, Interval{-2, 2});
  return make_contact("h21_chart:" + to_string(c) + "," + to_string(s), {"x1", "x2", "y1", "y2", "z"}, dom, g, phi,
                      {"0", "0", "0", "0", "2"}, {"0", "0", "-x1/2", "-x2/2", "1/2"});
}

AlmostHermitianStructure round_s2() {
  return make_hermitian("s2_round", {"th", "ph"}, {{0.25, M_PI - 0.25}, {-3, 3}}, {"1", "0", "0", "sin(th)^2"},
                        {"0", "-sin(th)", "1/sin(th)", "0"});
}

RWarpedContact sine_cone(bool use_sin) {
  if (use_sin) return build_r_warped_contact("sine_cone_sin", flat_complex_space(2), theta("sin(theta)"), {0, M_PI});
  return build_r_warped_contact("sine_cone_cos", flat_complex_space(2), theta("cos(theta)"), {-M_PI / 2, M_PI / 2});
}

RWarpedContact r_warped_surface() {
  return build_r_warped_contact("r_warped_surface", flat_r2(), theta("cos(theta)"), {-M_PI / 2, M_PI / 2});
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries{
      {"flat3", "flat cosymplectic R^3"},
      {"flat_cosymplectic5", "flat cosymplectic R^5"},
      {"sasakian_r3", "Sasakian R^3 (Heisenberg group, eta = (dz - y dx)/2)"},
      {"s2_round", "round S^2 with its Kaehler structure"},
      {"flat_c2", "flat C^2"},
      {"h21[:c,s]", "H(2,1) frame carrier, exact; default c,s = 3/5,4/5"},
      {"h21_chart[:c,s]", "H(2,1) in the global chart (x1, x2, y1, y2, z); default 3/5,4/5"},
      {"sine_cone_cos", "R^4 x (-pi/2, pi/2), g = dz^2 + cos^2 z g_R4"},
      {"sine_cone_sin", "R^4 x (0, pi), g = dz^2 + sin^2 z g_R4"},
      {"r_warped_surface", "R x_cos R^2 over a flat surface"},
      {"s5_in_c3", "unit S^5 in C^3 with the induced structure"},
      {"ellipsoid_in_c3", "ellipsoid in C^3 with the induced structure"},
      {"hopf_pair", "S^3 -> S^2(1/2) Hopf fibration"},
      {"cone_of:<name>", "metric cone over a chart almost contact structure"},
  };
  return entries;
}

Target resolve_target(const std::string& spec) {
  Target t;
  t.name = spec;
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_param = colon != std::string::npos;
  const std::string param = has_param ? spec.substr(colon + 1) : "";
  auto no_param = [&] {
    if (has_param) throw std::invalid_argument("target '" + head + "' takes no parameters");
  };

  if (head == "h21" || head == "h21_chart") {
    auto [c, s] = pythagorean_pair(has_param ? param : "3/5,4/5");
    if (head == "h21") {
      t.carrier = heisenberg_h21(c, s);
    } else {
      t.carrier = h21_chart(c, s);
    }
    return t;
  }
  if (head == "cone_of") {
    if (param.empty()) throw std::invalid_argument("cone_of needs a base, e.g. cone_of:s5_in_c3");
    Target base = resolve_target(param);
    if (std::holds_alternative<FrameStructure>(base.carrier)) {
      throw std::invalid_argument("cone_of: frame carrier '" + param +
                                  "' is unsupported; use its global chart (e.g. h21_chart)");
    }
    if (!std::holds_alternative<AlmostContactStructure>(base.carrier)) {
      throw std::invalid_argument("cone_of: base '" + param + "' is not an almost contact chart structure");
    }
    t.cone = build_cone(std::get<AlmostContactStructure>(base.carrier));
    t.carrier = t.cone->cone;
    return t;
  }
  if (head == "flat3" || head == "flat_cosymplectic5") {
    no_param();
    t.carrier = flat_cosymplectic(head == "flat3" ? 1 : 2);
  } else if (head == "sasakian_r3") {
    no_param();
    t.carrier = sasakian_r3();
  } else if (head == "s2_round") {
    no_param();
    t.carrier = round_s2();
  } else if (head == "flat_c2") {
    no_param();
    t.carrier = flat_complex_space(2);
  } else if (head == "sine_cone_cos" || head == "sine_cone_sin" || head == "r_warped_surface") {
    no_param();
    t.warped = head == "r_warped_surface" ? r_warped_surface() : sine_cone(head == "sine_cone_sin");
    t.carrier = t.warped->structure;
  } else if (head == "s5_in_c3" || head == "ellipsoid_in_c3") {
    no_param();
    t.hypersurface = head == "s5_in_c3" ? s5_in_c3() : ellipsoid_in_c3();
    t.carrier = induced_structure(*t.hypersurface);
  } else if (head == "hopf_pair") {
    no_param();
    t.carrier = hopf_pair();
  } else {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(spec, ec)) throw UnknownTarget("unknown target '" + spec + "'");
    std::visit([&](auto&& c) { t.carrier = std::move(c); }, load_manifold_file(spec));
  }
  return t;
}

}  // namespace curvlab

#include "curvlab/cli.hpp"

#include "curvlab/identities.hpp"
#include "curvlab/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <optional>
#include <sstream>

namespace curvlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- requests -------------------------------------------------------------

struct Request {
  enum Kind { Ident, CAlpha, KappaMu, Consequences, Classify } kind;
  Identity id = Identity::G1;
  std::vector<std::string> args;
};

/// Splits on commas outside parentheses.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> call_args(const std::string& token, const std::string& head) {
  if (token.size() < head.size() + 2 || token[head.size()] != '(' || token.back() != ')') {
    throw InputError("expected " + head + "(...) but got '" + token + "'");
  }
  std::vector<std::string> out;
  std::stringstream ss(token.substr(head.size() + 1, token.size() - head.size() - 2));
  std::string a;
  while (std::getline(ss, a, ',')) out.push_back(a);
  return out;
}

std::vector<Request> parse_which(const std::string& which) {
  std::vector<Request> out;
  for (const auto& tok : split_top(which)) {
    if (tok.empty()) throw InputError("empty entry in --which");
    if (auto id = identity_from_tag(tok)) {
      out.push_back({Request::Ident, *id, {}});
    } else if (tok == "consequences") {
      out.push_back({Request::Consequences, Identity::G1, {}});
    } else if (tok == "classify") {
      out.push_back({Request::Classify, Identity::G1, {}});
    } else if (tok.starts_with("c(")) {
      auto a = call_args(tok, "c");
      if (a.size() != 1) throw InputError("c(alpha) takes one argument");
      out.push_back({Request::CAlpha, Identity::G1, a});
    } else if (tok.starts_with("kappa-mu(")) {
      auto a = call_args(tok, "kappa-mu");
      if (a.size() != 2) throw InputError("kappa-mu(kappa,mu) takes two arguments");
      out.push_back({Request::KappaMu, Identity::G1, a});
    } else {
      throw InputError("unknown check '" + tok + "'");
    }
  }
  return out;
}

Rational rational_arg(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw InputError("expected a rational number but got '" + s + "'");
  }
}

double real_arg(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  try {
    return to_double(parse_rational(s));
  } catch (const std::exception&) {
    throw InputError("expected a number but got '" + s + "'");
  }
}

// ---- running checks ---------------------------------------------------------

struct Settings {
  int samples = 20;
  int vectors = 8;
  std::uint64_t seed = 42;
  double tol = 1e-7;
};

class Runner {
 public:
  Runner(const Target& t, const Settings& cfg) : t_(t), cfg_(cfg) {
    report_.target = t.name;
    report_.seed = cfg.seed;
    report_.tolerance = cfg.tol;
  }

  Report take() { return std::move(report_); }

  void add(IdentityReport r, bool required) {
    r.tolerance = cfg_.tol;
    report_.lines.push_back({std::move(r), required});
  }

  void axioms() {
    if (auto* c = contact()) {
      for (auto& r : validate(*c, samples_of(c->chart), cfg_.tol)) add(r, true);
    } else if (auto* f = frame()) {
      for (auto& r : validate(*f)) add(r, true);
    } else if (auto* h = hermitian()) {
      for (auto& r : validate(*h, samples_of(h->chart), cfg_.tol)) add(r, true);
    }
    if (auto* sp = submersion()) {
      for (auto& r : validate(sp->base, samples_of(sp->base.chart), cfg_.tol)) {
        r.tag = "base." + r.tag;
        add(r, true);
      }
    }
  }

  void classification() {
    std::vector<IdentityReport> checks;
    std::optional<ClassificationReport> cls;
    if (auto* c = contact()) {
      cls = classify(*c, samples_of(c->chart), cfg_.tol);
    } else if (auto* f = frame()) {
      cls = classify(*f);
    } else if (auto* h = hermitian()) {
      checks.push_back(kaehler(*h, ""));
      report_.notes.push_back(std::string("classes: ") + (checks.back().verdict() ? "Kaehler" : "not Kaehler"));
    }
    if (cls) {
      for (auto& r : cls->checks) r.tolerance = cfg_.tol;
      checks = cls->checks;
      std::vector<std::string> names;
      if (cls->contact_metric()) names.push_back("contact metric");
      if (cls->k_contact()) names.push_back("K-contact");
      if (cls->sasakian()) names.push_back("Sasakian");
      if (cls->cosymplectic()) names.push_back("cosymplectic");
      report_.notes.push_back("classes: " + (names.empty() ? std::string("none of contact metric, K-contact, Sasakian, cosymplectic") : join(names, ", ")));
      report_.notes.push_back("Ric(xi, xi) = " + fmt_double(cls->ric_xi_xi) + " at the witness, 2n = " + std::to_string(2 * cls->n));
    }
    for (auto& r : checks) {
      if (r.tag != "compatibility") add(r, false);
    }
    if (auto* sp = submersion()) add(kaehler(sp->base, "base."), false);
  }

  void constructions() {
    if (t_.hypersurface) {
      auto* c = contact();
      auto rep = induce_hypersurface(*t_.hypersurface, samples_of(c->chart), cfg_.tol);
      add(rep.umbilicity, false);
      if (rep.umbilical) {
        double lo = *std::min_element(rep.beta.begin(), rep.beta.end());
        double hi = *std::max_element(rep.beta.begin(), rep.beta.end());
        report_.notes.push_back("totally umbilical, beta in [" + fmt_double(lo) + ", " + fmt_double(hi) + "]");
      }
      add(rep.second_fundamental, true);
      add(rep.ambient_kaehler, true);
    }
    if (t_.cone) {
      for (auto& r : cone_oracle_checks(*t_.cone, samples_of(t_.cone->cone.chart), cfg_.tol)) add(r, true);
    }
    if (t_.warped) {
      warped_oracles(*t_.warped);
      auto& fib = t_.warped->fiber;
      add(eq_for_g1_check(fib, sample(fib.chart, cfg_.samples, cfg_.vectors, cfg_.seed), cfg_.tol), false);
    }
    if (auto* sp = submersion()) {
      for (auto& r : check_submersion_lift(*sp, samples_of(sp->total.chart), cfg_.tol)) {
        const bool conditional = r.tag == "lift.k1" || r.tag == "lift.k2" || r.tag == "lift.k3";
        add(r, !conditional);
      }
    }
  }

  void request(const Request& q, bool required) {
    switch (q.kind) {
      case Request::Ident:
        identity(q.id, required);
        break;
      case Request::CAlpha: {
        IdentityReport r;
        if (auto* f = frame()) {
          r = check_c_alpha(rational_arg(q.args[0]), *f);
        } else {
          r = check_c_alpha(real_arg(q.args[0]), contact_samples("c(alpha)"), cfg_.tol);
        }
        r.tag = "c(" + q.args[0] + ")";
        add(r, required);
        break;
      }
      case Request::KappaMu: {
        IdentityReport r;
        if (auto* f = frame()) {
          r = kappa_mu(*f, rational_arg(q.args[0]), rational_arg(q.args[1]));
        } else {
          const auto* c = contact_like("kappa-mu");
          r = kappa_mu(*c, samples_of(c->chart), real_arg(q.args[0]), real_arg(q.args[1]), cfg_.tol);
        }
        r.tag = "kappa_mu(" + q.args[0] + "," + q.args[1] + ")";
        add(r, required);
        break;
      }
      case Request::Consequences:
        break;  // expanded by the caller
      case Request::Classify:
        axioms();
        classification();
        break;
    }
  }

  void consequences(Identity id, bool required) {
    if (is_hermitian_identity(id)) return;
    std::vector<IdentityReport> rs;
    if (auto* f = frame()) {
      rs = consequence_suite(id, *f);
    } else {
      rs = consequence_suite(id, contact_samples("consequences"), cfg_.tol);
    }
    for (auto& r : rs) add(r, required);
  }

  bool is_hermitian_target() const { return hermitian() != nullptr; }

 private:
  void identity(Identity id, bool required) {
    IdentityReport r;
    if (is_hermitian_identity(id)) {
      const AlmostHermitianStructure* h = hermitian();
      if (auto* sp = submersion()) h = &sp->base;
      if (!h) throw InputError(identity_tag(id) + " needs an almost Hermitian target");
      if (!herm_ps_) herm_ps_ = prepare(*h, samples_of(h->chart));
      r = check_identity(id, *herm_ps_, cfg_.tol);
      if (submersion()) r.tag = "base." + r.tag;
    } else if (auto* f = frame()) {
      r = check_identity(id, *f);
    } else {
      r = check_identity(id, contact_samples(identity_tag(id)), cfg_.tol);
    }
    add(r, required);
  }

  IdentityReport kaehler(const AlmostHermitianStructure& h, const std::string& prefix) {
    IdentityReport r;
    r.tag = prefix + "kaehler_nabla_j";
    r.tolerance = cfg_.tol;
    const auto& s = samples_of(h.chart);
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      auto pg = geometry_at(h.chart, s.points[k]);
      auto J = eval_field_jets(h.J, s.points[k]);
      for (const auto& x : s.vectors[k]) {
        double m = 0;
        for (double v : pg.nabla_endomorphism(x, J)) m = std::max(m, std::abs(v));
        r.record(m, Witness{s.points[k], {x}, {}});
      }
    }
    return r;
  }

  void warped_oracles(const RWarpedContact& w) {
    IdentityReport curv, chris;
    curv.tag = "warped.curvature";
    chris.tag = "warped.christoffel";
    const auto& chart = w.structure.chart;
    const auto& s = samples_of(chart);
    for (const auto& p : s.points) {
      auto pg = geometry_at(chart, p);
      auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
      };
      curv.record(diff(pg.riem, r_warped_curvature_oracle(w, p)), Witness{p, {}, {}});
      chris.record(diff(pg.gamma, r_warped_christoffel_oracle(w, p)), Witness{p, {}, {}});
    }
    add(curv, true);
    add(chris, true);
  }

  /// Chart almost contact structure, including the total space of a submersion.
  const AlmostContactStructure* contact() const {
    if (auto* c = std::get_if<AlmostContactStructure>(&t_.carrier)) return c;
    if (auto* sp = submersion()) return &sp->total;
    return nullptr;
  }
  const FrameStructure* frame() const { return std::get_if<FrameStructure>(&t_.carrier); }
  const AlmostHermitianStructure* hermitian() const { return std::get_if<AlmostHermitianStructure>(&t_.carrier); }
  const SubmersionPair* submersion() const { return std::get_if<SubmersionPair>(&t_.carrier); }

  /// The almost contact structure of a chart or submersion target.
  const AlmostContactStructure* contact_like(const std::string& what) const {
    if (auto* c = contact()) return c;
    throw InputError(what + " needs an almost contact target");
  }

  const PreparedSamples& contact_samples(const std::string& what) {
    if (!contact_ps_) {
      const auto* c = contact_like(what);
      contact_ps_ = prepare(*c, samples_of(c->chart));
    }
    return *contact_ps_;
  }

  const SampleSet& samples_of(const Chart& chart) {
    auto it = std::find_if(cache_.begin(), cache_.end(), [&](const auto& e) { return e.first == chart.name; });
    if (it != cache_.end()) return it->second;
    cache_.emplace_back(chart.name, sample(chart, cfg_.samples, cfg_.vectors, cfg_.seed));
    return cache_.back().second;
  }

  const Target& t_;
  Settings cfg_;
  Report report_;
  std::optional<PreparedSamples> contact_ps_, herm_ps_;
  std::deque<std::pair<std::string, SampleSet>> cache_;
};

Report run_identities(const Target& t, const Settings& cfg, const std::string& which) {
  Runner r(t, cfg);
  std::vector<Request> reqs;
  if (which.empty()) {
    const char* def = r.is_hermitian_target() ? "k1,k2,k3" : "g1,g2,g3";
    reqs = parse_which(def);
  } else {
    reqs = parse_which(which);
  }
  std::vector<Identity> asked;
  for (const auto& q : reqs) {
    if (q.kind == Request::Ident) asked.push_back(q.id);
  }
  for (const auto& q : reqs) {
    if (q.kind == Request::Consequences) {
      std::vector<Identity> ids;
      for (auto id : asked) {
        if (!is_hermitian_identity(id)) ids.push_back(id);
      }
      if (ids.empty()) ids = {Identity::G1, Identity::G2, Identity::G3};
      for (auto id : ids) r.consequences(id, true);
    } else {
      r.request(q, true);
    }
  }
  return r.take();
}

Report run_classify(const Target& t, const Settings& cfg) {
  Runner r(t, cfg);
  r.axioms();
  r.classification();
  r.constructions();
  return r.take();
}

Report run_report(const Target& t, const Settings& cfg) {
  Runner r(t, cfg);
  r.axioms();
  r.classification();
  r.constructions();
  if (std::holds_alternative<SubmersionPair>(t.carrier)) {
    for (auto id : {Identity::G1, Identity::G2, Identity::G3, Identity::K1, Identity::K2, Identity::K3})
      r.request({Request::Ident, id, {}}, false);
  } else if (r.is_hermitian_target()) {
    for (auto id : {Identity::K1, Identity::K2, Identity::K3}) r.request({Request::Ident, id, {}}, false);
  } else {
    for (auto id : {Identity::G1, Identity::G2, Identity::G3}) r.request({Request::Ident, id, {}}, false);
    for (auto id : {Identity::G1, Identity::G2, Identity::G3}) r.consequences(id, false);
    r.request({Request::CAlpha, Identity::G1, {"0"}}, false);
    r.request({Request::CAlpha, Identity::G1, {"1"}}, false);
    r.request({Request::KappaMu, Identity::G1, {"1", "0"}}, false);
  }
  return r.take();
}

std::string witness_text(const Witness& w) {
  if (!w.frame_labels.empty()) return "(" + join(w.frame_labels, ", ") + ")";
  std::vector<std::string> p;
  for (double v : w.point) p.push_back(fmt_double(v, "%.4g"));
  return "p = (" + join(p, ", ") + ")";
}

std::optional<std::uint64_t> parse_seed(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

bool Report::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const ReportLine& l) { return !l.required || l.check.verdict(); });
}

std::string to_json(const Report& r) {
  ordered_json j;
  j["target"] = r.target;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["checks"] = ordered_json::array();
  for (const auto& line : r.lines) {
    const auto& c = line.check;
    ordered_json e;
    e["tag"] = c.tag;
    e["residual"] = c.residual;
    e["verdict"] = c.verdict();
    if (c.witness && !c.verdict()) {
      ordered_json w;
      if (!c.witness->point.empty()) w["point"] = c.witness->point;
      if (!c.witness->vectors.empty()) w["vectors"] = c.witness->vectors;
      if (!c.witness->frame_labels.empty()) w["frame"] = c.witness->frame_labels;
      e["witness"] = w;
    }
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string to_table(const Report& r) {
  std::ostringstream os;
  os << "target " << r.target << "  seed " << r.seed << "  tolerance " << fmt_double(r.tolerance, "%g") << "\n";
  std::size_t width = 12;
  for (const auto& l : r.lines) width = std::max(width, l.check.tag.size());
  for (const auto& l : r.lines) {
    const auto& c = l.check;
    std::string res = c.exact ? to_string(*c.exact) + " (exact)" : fmt_double(c.residual, "%.3e");
    std::string verdict = c.verdict() ? "pass" : (l.required ? "FAIL" : "no");
    os << "  " << c.tag << std::string(width - c.tag.size() + 2, ' ') << res
       << std::string(res.size() < 20 ? 20 - res.size() : 1, ' ') << verdict;
    if (!c.verdict() && c.witness) os << "  at " << witness_text(*c.witness);
    os << "\n";
  }
  for (const auto& n : r.notes) os << n << "\n";
  os << (r.ok() ? "ok" : "failed") << "\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings cfg;
  if (const char* env = std::getenv("CURVLAB_SEED")) {
    auto s = parse_seed(env);
    if (!s) {
      err << "error: CURVLAB_SEED must be a non-negative integer, got '" << env << "'\n";
      return 2;
    }
    cfg.seed = *s;
  }

  CLI::App app{"curvlab: curvature identities of almost contact and almost Hermitian structures", "curvlab"};
  app.require_subcommand(1);
  auto* list = app.add_subcommand("list", "list built-in targets");
  std::string target, which;
  bool json = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("target", target, "registry name, parameterized name or manifold file")->required();
    sub->add_option("--samples", cfg.samples, "sample points")->check(CLI::PositiveNumber);
    sub->add_option("--vectors", cfg.vectors, "tangent vectors per point")->check(CLI::Range(4, 1000));
    sub->add_option("--seed", cfg.seed, "sampling seed (default 42 or CURVLAB_SEED)");
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--json", json, "JSON report");
  };
  auto* classify_cmd = app.add_subcommand("classify", "structure axioms and class membership");
  auto* ident_cmd = app.add_subcommand("identities", "curvature identity sweeps");
  auto* report_cmd = app.add_subcommand("report", "every applicable check");
  for (auto* s : {classify_cmd, ident_cmd, report_cmd}) common(s);
  ident_cmd->add_option("--which", which, "g1,g2,g3,k1,k2,k3,c(alpha),kappa-mu(k,m),consequences,classify");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (list->parsed()) {
    for (const auto& e : registry()) out << e.name << std::string(e.name.size() < 20 ? 20 - e.name.size() : 1, ' ') << e.summary << "\n";
    return 0;
  }

  Report rep;
  try {
    Target t = resolve_target(target);
    if (classify_cmd->parsed()) {
      rep = run_classify(t, cfg);
    } else if (ident_cmd->parsed()) {
      rep = run_identities(t, cfg, which);
    } else {
      rep = run_report(t, cfg);
    }
  } catch (const ManifoldFileError& e) {
    err << "error: malformed manifold file " << target << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << (json ? to_json(rep) : to_table(rep));
  return rep.ok() ? 0 : 1;
}

}  // namespace curvlab

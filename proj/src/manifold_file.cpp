#include "curvlab/manifold_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace curvlab {

namespace {

std::size_t sz(int x) { return static_cast<std::size_t>(x); }

struct Entry {
  std::string key;
  std::string value;
  std::size_t key_offset = 0;
  std::size_t value_offset = 0;
};

struct Section {
  std::string name;
  std::size_t offset = 0;
  std::vector<Entry> entries;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::size_t b = pos, e = end;
    while (b < e && is_space(text[b])) ++b;

    // strip a trailing comment outside quotes
    bool quoted = false;
    for (std::size_t i = b; i < e; ++i) {
      if (text[i] == '"') quoted = !quoted;
      if (text[i] == '#' && !quoted) {
        e = i;
        break;
      }
    }
    if (quoted) throw ManifoldFileError("unterminated string", b);
    while (e > b && is_space(text[e - 1])) --e;

    if (b < e) {
      if (text[b] == '[') {
        if (text[e - 1] != ']') throw ManifoldFileError("malformed section header", b);
        out.push_back({std::string(text.substr(b + 1, e - b - 2)), b, {}});
      } else {
        if (out.empty()) throw ManifoldFileError("entry outside any section", b);
        std::size_t eq = text.find('=', b);
        if (eq == std::string_view::npos || eq >= e) throw ManifoldFileError("expected key = value", b);
        std::size_t ke = eq;
        while (ke > b && is_space(text[ke - 1])) --ke;
        if (ke == b) throw ManifoldFileError("missing key", b);
        std::size_t vb = eq + 1;
        while (vb < e && is_space(text[vb])) ++vb;
        if (vb == e) throw ManifoldFileError("missing value", eq);
        Entry en{std::string(text.substr(b, ke - b)), {}, b, vb};
        if (text[vb] == '"') {
          if (e - vb < 2 || text[e - 1] != '"') throw ManifoldFileError("malformed quoted value", vb);
          en.value = std::string(text.substr(vb + 1, e - vb - 2));
          en.value_offset = vb + 1;
        } else {
          en.value = std::string(text.substr(vb, e - vb));
        }
        out.back().entries.push_back(std::move(en));
      }
    }
    pos = end + 1;
  }
  return out;
}

int parse_int(const Entry& en) {
  int v = 0;
  auto [p, ec] = std::from_chars(en.value.data(), en.value.data() + en.value.size(), v);
  if (ec != std::errc() || p != en.value.data() + en.value.size()) {
    throw ManifoldFileError("expected an integer for '" + en.key + "'", en.value_offset);
  }
  return v;
}

std::vector<std::string> split_list(const Entry& en) {
  std::vector<std::string> out;
  std::stringstream ss(en.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ManifoldFileError("empty list item in '" + en.key + "'", en.value_offset);
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double parse_bound(const std::string& s, const Entry& en) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ManifoldFileError("bad interval bound '" + s + "'", en.value_offset);
}

/// Index suffixes: "_1_2", "_12" (both single digit), "^1_2", "^12"; 1-based.
std::optional<std::vector<int>> parse_indices(std::string_view s, int count) {
  std::vector<int> idx;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '_' || s[i] == '^') ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    if (j < s.size() && s[j] != '_' && s[j] != '^') return std::nullopt;
    idx.push_back(std::stoi(std::string(s.substr(i, j - i))));
    i = j;
  }
  if (static_cast<int>(idx.size()) == 1 && count == 2) {
    // concatenated single digits
    std::string d = std::to_string(idx[0]);
    if (d.size() != 2) return std::nullopt;
    idx = {d[0] - '0', d[1] - '0'};
  }
  if (static_cast<int>(idx.size()) != count) return std::nullopt;
  return idx;
}

/// Bracketed indices "[1][2][3]", 1-based.
std::optional<std::vector<int>> parse_brackets(std::string_view s) {
  std::vector<int> idx;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '[') return std::nullopt;
    std::size_t close = s.find(']', i);
    if (close == std::string_view::npos || close == i + 1) return std::nullopt;
    int v = 0;
    auto [p, ec] = std::from_chars(s.data() + i + 1, s.data() + close, v);
    if (ec != std::errc() || p != s.data() + close) return std::nullopt;
    idx.push_back(v);
    i = close + 1;
  }
  return idx;
}

void check_range(const std::vector<int>& idx, int dim, const Entry& en) {
  for (int v : idx) {
    if (v < 1 || v > dim) {
      throw ManifoldFileError("index " + std::to_string(v) + " out of range 1.." + std::to_string(dim) + " in '" +
                                  en.key + "'",
                              en.key_offset);
    }
  }
}

/// Table of expression texts for one indexed section.
struct ExprTable {
  std::vector<std::optional<Entry>> cells;
  explicit ExprTable(std::size_t n) : cells(n) {}

  void put(std::size_t at, const Entry& en) {
    if (cells[at]) throw ManifoldFileError("duplicate entry '" + en.key + "'", en.key_offset);
    cells[at] = en;
  }

  std::vector<Expr> parse(const std::vector<std::string>& coords) const {
    std::vector<Expr> out;
    for (const auto& c : cells) {
      if (!c) {
        out.push_back(parse_expr("0", coords));
        continue;
      }
      try {
        out.push_back(parse_expr(c->value, coords));
      } catch (const ParseError& e) {
        std::string msg = e.what();
        msg = msg.substr(0, msg.rfind(" at byte "));
        throw ManifoldFileError(msg + " in '" + c->key + "'", c->value_offset + e.offset());
      }
    }
    return out;
  }
};

ExprTable read_indexed(const Section& sec, std::string_view prefix, int count, int dim) {
  ExprTable t(sz(count == 1 ? dim : dim * dim));
  for (const auto& en : sec.entries) {
    std::optional<std::vector<int>> idx;
    if (en.key.starts_with(prefix)) idx = parse_indices(std::string_view(en.key).substr(prefix.size()), count);
    if (!idx) throw ManifoldFileError("unknown key '" + en.key + "' in [" + sec.name + "]", en.key_offset);
    check_range(*idx, dim, en);
    const int i = (*idx)[0] - 1;
    t.put(sz(count == 1 ? i : i * dim + (*idx)[1] - 1), en);
  }
  return t;
}

struct ChartHeader {
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<Interval> domain;
};

ChartHeader read_chart(const Section& sec) {
  ChartHeader h;
  std::optional<Entry> dim_entry;
  std::vector<Entry> domains;
  bool have_coords = false;
  for (const auto& en : sec.entries) {
    if (en.key == "dim") {
      if (dim_entry) throw ManifoldFileError("duplicate entry 'dim'", en.key_offset);
      dim_entry = en;
      h.dim = parse_int(en);
    } else if (en.key == "coords") {
      if (have_coords) throw ManifoldFileError("duplicate entry 'coords'", en.key_offset);
      have_coords = true;
      h.coords = split_list(en);
      for (std::size_t i = 0; i < h.coords.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (h.coords[i] == h.coords[j]) throw ManifoldFileError("duplicate coordinate '" + h.coords[i] + "'", en.value_offset);
        }
      }
    } else if (en.key == "domain") {
      domains.push_back(en);
    } else {
      throw ManifoldFileError("unknown key '" + en.key + "' in [chart]", en.key_offset);
    }
  }
  if (!have_coords) throw ManifoldFileError("[chart] needs coords", sec.offset);
  if (dim_entry && h.dim != static_cast<int>(h.coords.size())) {
    throw ManifoldFileError("dim " + std::to_string(h.dim) + " does not match " + std::to_string(h.coords.size()) +
                                " coordinates",
                            dim_entry->value_offset);
  }
  h.dim = static_cast<int>(h.coords.size());
  h.domain.assign(h.coords.size(), Interval{});
  static const std::regex re(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s+in\s+\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*$)");
  std::vector<bool> seen(h.coords.size(), false);
  for (const auto& en : domains) {
    std::smatch m;
    if (!std::regex_match(en.value, m, re)) {
      throw ManifoldFileError("expected \"name in (lo, hi)\"", en.value_offset);
    }
    auto it = std::find(h.coords.begin(), h.coords.end(), m[1].str());
    if (it == h.coords.end()) throw ManifoldFileError("unknown coordinate '" + m[1].str() + "'", en.value_offset);
    auto k = static_cast<std::size_t>(it - h.coords.begin());
    if (seen[k]) throw ManifoldFileError("duplicate domain for '" + m[1].str() + "'", en.key_offset);
    seen[k] = true;
    Interval iv{parse_bound(m[2].str(), en), parse_bound(m[3].str(), en)};
    if (!(iv.lo < iv.hi)) throw ManifoldFileError("empty interval", en.value_offset);
    h.domain[k] = iv;
  }
  return h;
}

ComponentField read_metric(const Section& sec, const ChartHeader& h) {
  const int n = h.dim;
  auto t = read_indexed(sec, "g", 2, n);
  // fill the lower triangle from the upper one, or the reverse
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto& up = t.cells[sz(i * n + j)];
      auto& lo = t.cells[sz(j * n + i)];
      if (up && lo) throw ManifoldFileError("metric entry given twice as '" + up->key + "' and '" + lo->key + "'", lo->key_offset);
      if (up) lo = up;
      if (lo) up = lo;
    }
  }
  return ComponentField(t.parse(h.coords));
}

Rational rational_of(const Entry& en) {
  try {
    return parse_rational(en.value);
  } catch (const std::exception& e) {
    throw ManifoldFileError("bad rational '" + en.value + "' for '" + en.key + "'", en.value_offset);
  }
}

FrameStructure read_frame(const Section& sec, const std::string& name) {
  int n = 0;
  for (const auto& en : sec.entries) {
    if (en.key == "dim") {
      if (n) throw ManifoldFileError("duplicate entry 'dim'", en.key_offset);
      n = parse_int(en);
      if (n < 1) throw ManifoldFileError("dim must be positive", en.value_offset);
    }
  }
  if (!n) throw ManifoldFileError("[frame] needs dim", sec.offset);

  Vec<Rational> c(sz(n * n * n), Rational(0)), g(sz(n * n), Rational(0)), phi(sz(n * n), Rational(0)),
      xi(sz(n), Rational(0)), eta(sz(n), Rational(0));
  std::vector<bool> c_set(c.size()), g_set(g.size()), phi_set(phi.size()), xi_set(xi.size()), eta_set(eta.size());
  std::vector<std::string> labels;
  bool contact = false;

  auto assign = [&](Vec<Rational>& dst, std::vector<bool>& set, std::size_t at, const Entry& en, Rational v) {
    if (set[at]) throw ManifoldFileError("duplicate entry '" + en.key + "'", en.key_offset);
    set[at] = true;
    dst[at] = std::move(v);
  };
  for (const auto& en : sec.entries) {
    if (en.key == "dim") continue;
    if (en.key == "labels") {
      labels = split_list(en);
      if (static_cast<int>(labels.size()) != n) throw ManifoldFileError("labels count differs from dim", en.value_offset);
      continue;
    }
    auto br = en.key.find('[');
    std::string head = en.key.substr(0, br);
    std::optional<std::vector<int>> idx;
    if (br != std::string::npos) idx = parse_brackets(std::string_view(en.key).substr(br));
    std::size_t want = head == "c" ? 3 : (head == "g" || head == "phi") ? 2 : (head == "xi" || head == "eta") ? 1 : 0;
    if (!want || !idx || idx->size() != want) {
      throw ManifoldFileError("unknown key '" + en.key + "' in [frame]", en.key_offset);
    }
    check_range(*idx, n, en);
    std::vector<std::size_t> i0;
    for (int v : *idx) i0.push_back(static_cast<std::size_t>(v - 1));
    Rational v = rational_of(en);
    const auto N = static_cast<std::size_t>(n);
    if (head == "c") {
      if (i0[1] == i0[2] && v != 0) throw ManifoldFileError("c[k][i][i] must be 0", en.value_offset);
      assign(c, c_set, (i0[0] * N + i0[1]) * N + i0[2], en, v);
      const std::size_t mirror = (i0[0] * N + i0[2]) * N + i0[1];
      if (mirror != (i0[0] * N + i0[1]) * N + i0[2]) {
        if (c_set[mirror] && c[mirror] != -v) {
          throw ManifoldFileError("'" + en.key + "' contradicts the antisymmetric entry", en.value_offset);
        }
        c[mirror] = -v;
        c_set[mirror] = true;
      }
    } else if (head == "g") {
      assign(g, g_set, i0[0] * N + i0[1], en, v);
      const std::size_t mirror = i0[1] * N + i0[0];
      if (mirror != i0[0] * N + i0[1]) {
        if (g_set[mirror] && g[mirror] != v) throw ManifoldFileError("'" + en.key + "' breaks symmetry", en.value_offset);
        g[mirror] = v;
        g_set[mirror] = true;
      }
    } else if (head == "phi") {
      contact = true;
      assign(phi, phi_set, i0[0] * N + i0[1], en, v);
    } else if (head == "xi") {
      contact = true;
      assign(xi, xi_set, i0[0], en, v);
    } else {
      contact = true;
      assign(eta, eta_set, i0[0], en, v);
    }
  }
  if (!contact) throw ManifoldFileError("[frame] needs phi, xi and eta entries", sec.offset);
  try {
    FrameStructure f{name, FrameGeometry(n, std::move(c), std::move(g)), std::move(phi), std::move(xi), std::move(eta),
                     std::move(labels)};
    return f;
  } catch (const std::exception& e) {
    throw ManifoldFileError(e.what(), sec.offset);
  }
}

}  // namespace

Carrier parse_manifold(std::string_view text, const std::string& name) {
  auto sections = split_sections(text);
  std::map<std::string, const Section*> by_name;
  static const std::vector<std::string> known{"chart", "metric", "phi", "xi", "eta", "hermitian", "frame"};
  for (const auto& s : sections) {
    if (std::find(known.begin(), known.end(), s.name) == known.end()) {
      throw ManifoldFileError("unknown section [" + s.name + "]", s.offset);
    }
    if (by_name.count(s.name)) throw ManifoldFileError("duplicate section [" + s.name + "]", s.offset);
    by_name[s.name] = &s;
  }
  auto get = [&](const std::string& s) -> const Section* {
    auto it = by_name.find(s);
    return it == by_name.end() ? nullptr : it->second;
  };

  if (const Section* fr = get("frame")) {
    for (const auto& s : sections) {
      if (&s != fr) throw ManifoldFileError("[" + s.name + "] cannot be combined with [frame]", s.offset);
    }
    return read_frame(*fr, name);
  }

  const Section* chart = get("chart");
  if (!chart) throw ManifoldFileError("missing [chart] section", 0);
  const Section* metric = get("metric");
  if (!metric) throw ManifoldFileError("missing [metric] section", text.size());
  auto h = read_chart(*chart);

  const Section* herm = get("hermitian");
  const Section* contact_parts[] = {get("phi"), get("xi"), get("eta")};
  if (herm) {
    for (const Section* s : contact_parts) {
      if (s) throw ManifoldFileError("[hermitian] replaces [" + s->name + "]", s->offset);
    }
    AlmostHermitianStructure s;
    s.name = name;
    s.chart = {name, h.coords, h.domain, read_metric(*metric, h)};
    s.J = {Valence::Endomorphism, ComponentField(read_indexed(*herm, "J", 2, h.dim).parse(h.coords))};
    s.check_shapes();
    return s;
  }
  const char* names[] = {"phi", "xi", "eta"};
  for (int k = 0; k < 3; ++k) {
    if (!contact_parts[k]) {
      throw ManifoldFileError(std::string("missing [") + names[k] + "] section (or use [hermitian])", text.size());
    }
  }
  AlmostContactStructure s;
  s.name = name;
  s.chart = {name, h.coords, h.domain, read_metric(*metric, h)};
  s.phi = {Valence::Endomorphism, ComponentField(read_indexed(*contact_parts[0], "phi", 2, h.dim).parse(h.coords))};
  s.xi = {Valence::Vector, ComponentField(read_indexed(*contact_parts[1], "xi", 1, h.dim).parse(h.coords))};
  s.eta = {Valence::OneForm, ComponentField(read_indexed(*contact_parts[2], "eta", 1, h.dim).parse(h.coords))};
  s.check_shapes();
  return s;
}

Carrier load_manifold_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifold(ss.str(), path.stem().string());
}

}  // namespace curvlab

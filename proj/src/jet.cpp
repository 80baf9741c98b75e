#include "curvlab/jet.hpp"

namespace curvlab {

std::string_view to_string(Elementary f) {
  switch (f) {
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Tan: return "tan";
    case Elementary::Exp: return "exp";
    case Elementary::Log: return "log";
    case Elementary::Sqrt: return "sqrt";
    case Elementary::Sinh: return "sinh";
    case Elementary::Cosh: return "cosh";
  }
  return "?";
}

std::vector<Jet2<Jet>> seed_all_nested(std::span<const double> p) {
  const int n = static_cast<int>(p.size());
  std::vector<Jet2<Jet>> out;
  out.reserve(p.size());
  for (int i = 0; i < n; ++i) {
    // outer value is the inner seed; outer derivative along i is the constant 1
    auto j = Jet2<Jet>::zero(n);
    j.value() = Jet::seed(n, i, p[static_cast<std::size_t>(i)]);
    j.grad_ref(i) = Jet(1.0);
    out.push_back(std::move(j));
  }
  return out;
}

Jet embed(const Jet& j, int n, int offset) {
  if (j.is_constant()) return j;
  if (offset < 0 || offset + j.size() > n) throw std::out_of_range("jet embedding out of range");
  Jet r = Jet::zero(n);
  r.value() = j.value();
  for (int a = 0; a < j.size(); ++a) {
    r.grad_ref(offset + a) = j.grad(a);
    for (int b = 0; b < j.size(); ++b) r.hess_ref(offset + a, offset + b) = j.hess(a, b);
  }
  return r;
}

}  // namespace curvlab

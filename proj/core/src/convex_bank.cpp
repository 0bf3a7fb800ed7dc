#include "majdyn/convex_bank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace majdyn {

const ConvexTestFn* Battery::find(std::string_view id) const {
  for (const auto& m : members) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

Battery Battery::subset(std::span<const std::string> ids) const {
  Battery out;
  for (const auto& id : ids) {
    const ConvexTestFn* m = find(id);
    if (m == nullptr) {
      throw std::invalid_argument("Battery::subset: unknown id '" + id + "'");
    }
    out.members.push_back(*m);
  }
  return out;
}

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

ConvexTestFn hinge(double a) {
  ConvexTestFn f;
  f.id = "hinge_" + [a] {
    // Compact id: 0.25 -> "0.25", 1 -> "1".
    std::string s = std::to_string(a);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }();
  f.eval = [a](double x) { return std::max(x - a, 0.0); };
  f.d1 = [a](double x) { return x > a ? 1.0 : 0.0; };  // a.e.
  f.d2 = [](double) { return 0.0; };                   // a.e.
  f.increasing = true;
  f.differentiable = false;  // kink at x = a
  return f;
}

}  // namespace

Battery standard_battery() {
  Battery b;
  b.members.push_back({"xlnx", xlnx,
                       [](double x) { return std::log(x) + 1.0; },
                       [](double x) { return 1.0 / x; },
                       /*increasing=*/false, /*differentiable=*/true});
  b.members.push_back({"x2", [](double x) { return x * x; },
                       [](double x) { return 2.0 * x; },
                       [](double) { return 2.0; }, false, true});
  b.members.push_back({"x15", [](double x) { return x * std::sqrt(x); },
                       [](double x) { return 1.5 * std::sqrt(x); },
                       [](double x) { return 0.75 / std::sqrt(x); }, false,
                       true});
  b.members.push_back({"x3", [](double x) { return x * x * x; },
                       [](double x) { return 3.0 * x * x; },
                       [](double x) { return 6.0 * x; }, false, true});
  b.members.push_back({"abs", [](double x) { return std::abs(x); },
                       [](double x) { return x < 0.0 ? -1.0 : 1.0; },  // a.e.
                       [](double) { return 0.0; },                     // a.e.
                       false, false});
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) b.members.push_back(hinge(a));
  b.members.push_back({"exp", [](double x) { return std::exp(x); },
                       [](double x) { return std::exp(x); },
                       [](double x) { return std::exp(x); },
                       /*increasing=*/true, true});
  return b;
}

Battery icx_battery() {
  Battery b;
  // The identity is both convex and increasing; it pins the mass term.
  b.members.push_back({"linear", [](double x) { return x; },
                       [](double) { return 1.0; }, [](double) { return 0.0; },
                       true, true});
  for (const auto& m : standard_battery().members) {
    if (m.increasing) b.members.push_back(m);
  }
  return b;
}

std::vector<VectorTestFn> schur_samples(int n) {
  if (n < 2) {
    throw std::invalid_argument("schur_samples: n must be >= 2");
  }
  std::vector<VectorTestFn> fns;
  fns.push_back({"max", [](std::span<const double> v) {
                   return *std::max_element(v.begin(), v.end());
                 }});
  fns.push_back({"sum_sq", [](std::span<const double> v) {
                   double s = 0.0;
                   for (double x : v) s += x * x;
                   return s;
                 }});
  fns.push_back({"neg_entropy", [](std::span<const double> v) {
                   double s = 0.0;
                   for (double x : v) s += xlnx(x);
                   return s;
                 }});
  // Symmetric convex (hence quasi-convex): the sum of the two largest
  // components. The k-th largest alone is not quasi-convex and would not
  // be monotone along the order.
  fns.push_back({"top2_sum", [](std::span<const double> v) {
                   std::vector<double> s(v.begin(), v.end());
                   std::nth_element(s.begin(), s.begin() + 1, s.end(),
                                    std::greater<>());
                   return s[0] + s[1];
                 }});
  return fns;
}

double lambda_phi(const Density& p, const ConvexTestFn& phi) {
  double s = 0.0;
  for (double v : p.values()) s += phi.eval(v);
  return p.grid().h() * s;
}

}  // namespace majdyn

#include "majdyn/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "majdyn/errors.hpp"

namespace majdyn {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Majorizes: return "Majorizes";
    case Relation::MajorizedBy: return "MajorizedBy";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

std::string Witness::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::CumulativeIndex:
      os << "cum[" << static_cast<long>(value) << "]";
      break;
    case Kind::HingeThreshold:
      os << "hinge(a=" << value << ")";
      break;
    case Kind::MassMismatch:
      os << "mass";
      break;
  }
  return os.str();
}

namespace {

std::vector<double> sorted_prefix_sums(std::span<const double> values,
                                       double scale) {
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  double acc = 0.0;
  for (double& x : s) {
    acc += x;
    x = acc * scale;
  }
  return s;
}

struct DirectionCheck {
  bool partials_ok;   // every cumulative inequality holds
  double overshoot;   // max_k cum_a[k] - cum_b[k]
  long first_fail_k;  // 1-based index of the first failure, or 0
};

DirectionCheck dominate(const std::vector<double>& a,
                        const std::vector<double>& b, double ctol,
                        std::size_t k_max) {
  DirectionCheck r{true, -std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < k_max; ++k) {
    const double over = a[k] - b[k];
    r.overshoot = std::max(r.overshoot, over);
    if (over > ctol && r.first_fail_k == 0) {
      r.partials_ok = false;
      r.first_fail_k = static_cast<long>(k + 1);
    }
  }
  return r;
}

Verdict classify(const DirectionCheck& fg, bool fg_mass_ok,
                 const DirectionCheck& gf, bool gf_mass_ok,
                 double mass_diff) {
  const bool f_majorized = fg.partials_ok && fg_mass_ok;
  const bool g_majorized = gf.partials_ok && gf_mass_ok;
  Verdict v;
  v.overshoot_fg = fg.overshoot;
  v.overshoot_gf = gf.overshoot;
  v.mass_difference = mass_diff;
  if (f_majorized && g_majorized) {
    v.relation = Relation::Equivalent;
  } else if (f_majorized) {
    v.relation = Relation::MajorizedBy;
  } else if (g_majorized) {
    v.relation = Relation::Majorizes;
  } else {
    v.relation = Relation::Incomparable;
    // Prefer the mass witness when a direction fails only on the total:
    // that is the informative failure for decaying trajectories.
    if (fg.partials_ok || gf.partials_ok) {
      v.witness = Witness{Witness::Kind::MassMismatch, mass_diff};
    } else {
      v.witness = Witness{Witness::Kind::CumulativeIndex,
                          static_cast<double>(fg.first_fail_k)};
    }
  }
  return v;
}

}  // namespace

Verdict compare_continuous(const Density& f, const Density& g, double tol) {
  if (f.grid() != g.grid()) {
    throw GridMismatch("compare_continuous: grids differ");
  }
  const double h = f.grid().h();
  const auto cf = sorted_prefix_sums(f.values(), h);
  const auto cg = sorted_prefix_sums(g.values(), h);
  const double ctol = tol * std::max(1.0, std::max(f.mass(), g.mass()));
  const double mass_diff = f.mass() - g.mass();
  const bool mass_ok = std::abs(mass_diff) <= tol;
  const auto fg = dominate(cf, cg, ctol, cf.size());
  const auto gf = dominate(cg, cf, ctol, cf.size());
  return classify(fg, mass_ok, gf, mass_ok, mass_diff);
}

Verdict compare_weak(const Density& f, const Density& g, double tol) {
  if (f.grid() != g.grid()) {
    throw GridMismatch("compare_weak: grids differ");
  }
  const double h = f.grid().h();
  const auto cf = sorted_prefix_sums(f.values(), h);
  const auto cg = sorted_prefix_sums(g.values(), h);
  const double ctol = tol * std::max(1.0, std::max(f.mass(), g.mass()));
  const auto fg = dominate(cf, cg, ctol, cf.size());
  const auto gf = dominate(cg, cf, ctol, cf.size());
  // No total-mass equality in the weak order.
  return classify(fg, true, gf, true, f.mass() - g.mass());
}

Verdict compare_discrete(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("compare_discrete: lengths differ");
  }
  if (x.empty()) {
    throw LengthMismatch("compare_discrete: empty vectors");
  }
  const auto cx = sorted_prefix_sums(x, 1.0);
  const auto cy = sorted_prefix_sums(y, 1.0);
  const std::size_t n = cx.size();
  // Exact arithmetic: partial-sum inequalities are strict comparisons and
  // the totals must match bit-for-bit (sorted summation order is identical
  // for permutations, so permuted vectors always compare Equivalent).
  const double mass_diff = cx[n - 1] - cy[n - 1];
  const bool mass_ok = mass_diff == 0.0;
  const auto fg = dominate(cx, cy, 0.0, n - 1);
  const auto gf = dominate(cy, cx, 0.0, n - 1);
  return classify(fg, mass_ok, gf, mass_ok, mass_diff);
}

std::vector<double> hinge_threshold_grid(const Density& f, const Density& g,
                                         int n_thresholds) {
  if (n_thresholds < 2) {
    throw std::invalid_argument("hinge_threshold_grid: need >= 2 thresholds");
  }
  const double top = std::max(f.max_value(), g.max_value());
  std::vector<double> a(n_thresholds);
  for (int i = 0; i < n_thresholds; ++i) {
    a[i] = top * static_cast<double>(i) / (n_thresholds - 1);
  }
  return a;
}

namespace {

double lambda_of(const Density& d, double (*phi)(double)) {
  double s = 0.0;
  for (double v : d.values()) s += phi(v);
  return d.grid().h() * s;
}

double phi_sq(double x) { return x * x; }
double phi_xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

Verdict compare_by_battery(const Density& f, const Density& g,
                           int n_thresholds, double tol) {
  if (f.grid() != g.grid()) {
    throw GridMismatch("compare_by_battery: grids differ");
  }
  const auto thresholds = hinge_threshold_grid(f, g, n_thresholds);
  const double mass_diff = f.mass() - g.mass();
  const bool mass_ok = std::abs(mass_diff) <= tol;

  auto direction = [&](const Density& a, const Density& b,
                       std::optional<Witness>& w) {
    if (const auto hinge = hinge_witness(a, b, thresholds)) {
      w = Witness{Witness::Kind::HingeThreshold, *hinge};
      return false;
    }
    for (double (*phi)(double) : {&phi_sq, &phi_xlnx}) {
      const double la = lambda_of(a, phi);
      const double lb = lambda_of(b, phi);
      if (la > lb + tol * std::max(1.0, std::abs(la) + std::abs(lb))) {
        return false;
      }
    }
    return true;
  };

  std::optional<Witness> w_fg;
  std::optional<Witness> w_gf;
  const bool f_maj = direction(f, g, w_fg) && mass_ok;
  const bool g_maj = direction(g, f, w_gf) && mass_ok;
  Verdict v;
  v.mass_difference = mass_diff;
  if (f_maj && g_maj) {
    v.relation = Relation::Equivalent;
  } else if (f_maj) {
    v.relation = Relation::MajorizedBy;
  } else if (g_maj) {
    v.relation = Relation::Majorizes;
  } else {
    v.relation = Relation::Incomparable;
    if (w_fg) {
      v.witness = w_fg;
    } else if (w_gf) {
      v.witness = w_gf;
    } else {
      v.witness = Witness{Witness::Kind::MassMismatch, mass_diff};
    }
  }
  return v;
}

std::optional<double> hinge_witness(const Density& f, const Density& g,
                                    std::span<const double> thresholds) {
  if (f.grid() != g.grid()) {
    throw GridMismatch("hinge_witness: grids differ");
  }
  if (thresholds.empty()) {
    throw std::invalid_argument("hinge_witness: no thresholds");
  }
  const double h = f.grid().h();
  // Round-off guard: a genuine violation of the hinge inequality must beat
  // quadrature noise, otherwise f == g would occasionally "witness".
  const double guard = 1e-12 * std::max(1.0, std::max(f.mass(), g.mass()));
  for (double a : thresholds) {
    double vf = 0.0;
    double vg = 0.0;
    for (double v : f.values()) vf += std::max(v - a, 0.0);
    for (double v : g.values()) vg += std::max(v - a, 0.0);
    if (h * vf > h * vg + guard) return a;
  }
  return std::nullopt;
}

}  // namespace majdyn

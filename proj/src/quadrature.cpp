#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hardylab/kernels.hpp"
#include "hardylab/summation.hpp"

namespace hardylab::quadrature {

namespace {

// Interior (ungraded) pieces get this many cells per configured band cell.
constexpr int kInteriorCellFactor = 4;

void append_cell(Mesh& mesh, double a, double b, QuadratureRule rule) {
  const double h = b - a;
  const double mid = a + 0.5 * h;
  if (rule == QuadratureRule::kMidpoint) {
    mesh.nodes.push_back(mid);
    mesh.weights.push_back(h);
    return;
  }
  // Shared endpoints are merged with the previous cell.
  if (!mesh.nodes.empty() && mesh.nodes.back() == a) {
    mesh.weights.back() += h / 6.0;
  } else {
    mesh.nodes.push_back(a);
    mesh.weights.push_back(h / 6.0);
  }
  mesh.nodes.push_back(mid);
  mesh.weights.push_back(4.0 * h / 6.0);
  mesh.nodes.push_back(b);
  mesh.weights.push_back(h / 6.0);
}

// Endpoint nodes are moved one ulp inside so that a jump at a piece
// boundary is seen as the one-sided limit from within the piece.
double sum_on_mesh(const Mesh& mesh, const BasePair& bases, double e1, double e2, double lo,
                   double hi) {
  const double inner_lo = std::nextafter(lo, hi);
  const double inner_hi = std::nextafter(hi, lo);
  std::vector<double> u(mesh.nodes.size());
  std::vector<double> v(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const auto [ui, vi] = bases(std::clamp(mesh.nodes[i], inner_lo, inner_hi));
    u[i] = ui;
    v[i] = vi;
  }
  return kernels::weighted_power_sum(mesh.weights, u, e1, v, e2);
}

double integrand_at(const BasePair& bases, double t, double e1, double e2) {
  const auto [u, v] = bases(t);
  const double w = 1.0;
  return kernels::weighted_power_sum(std::span<const double>(&w, 1), std::span<const double>(&u, 1),
                                     e1, std::span<const double>(&v, 1), e2);
}

// Integral over [lo, lo + delta] of the power law through two samples.
double power_law_tail(const BasePair& bases, double e1, double e2, double lo, double delta,
                      double ratio) {
  const double g1 = integrand_at(bases, lo + delta, e1, e2);
  const double g2 = integrand_at(bases, lo + ratio * delta, e1, e2);
  if (!std::isfinite(g1) || !std::isfinite(g2) || g1 < 0.0 || g2 < 0.0) {
    throw DomainError("integrand is not finite and positive near the left endpoint");
  }
  if (g1 == 0.0) return 0.0;
  const double s = -std::log(g1 / g2) / std::log(ratio);
  if (!(s > -1.0 + 1e-12)) {
    std::ostringstream os;
    os << "integrand behaves like (t - lo)^" << s << " at the left endpoint and is not integrable";
    throw DomainError(os.str());
  }
  return g1 * delta / (s + 1.0);
}

// Largest cell multiplier tried before a piece is declared unconverged.
constexpr int kMaxScale = 16;

// The first piece is graded toward lo and closed with a power-law tail.
// Later pieces that are long compared with their distance to the origin are
// graded as well, since F varies on the scale of (t - origin) there; their
// innermost remainder is smooth and gets a uniform mesh. `scale` multiplies
// every cell count.
double integrate_piece(const BasePair& bases, double e1, double e2, double origin, double lo,
                       double hi, int scale, const QuadratureConfig& cfg) {
  const bool first = lo == origin;
  const double r = cfg.grading_ratio;
  const double spread = first ? 0.0 : (hi - lo) / (lo - origin);
  if (!first && spread <= 2.0) {
    const int cells = kInteriorCellFactor * cfg.cells_per_band * scale;
    return sum_on_mesh(build_mesh(lo, hi, false, cells, cfg), bases, e1, e2, lo, hi);
  }
  QuadratureConfig graded = cfg;
  if (!first) {
    graded.bands =
        std::min(cfg.bands, static_cast<int>(std::ceil(std::log(spread) / -std::log(r))) + 1);
  }
  const double delta = (hi - lo) * std::pow(r, graded.bands);
  const int cells = cfg.cells_per_band * scale;
  const double inner =
      first ? power_law_tail(bases, e1, e2, lo, delta, r)
            : sum_on_mesh(build_mesh(lo, lo + delta, false, cells, cfg), bases, e1, e2, lo, lo + delta);
  return inner + sum_on_mesh(build_mesh(lo, hi, true, cells, graded), bases, e1, e2, lo, hi);
}

}  // namespace

Refined refine_oracle(double coarse, double fine, int order) {
  const double factor = std::ldexp(1.0, order) - 1.0;
  const double correction = (fine - coarse) / factor;
  return {fine + correction, std::abs(correction)};
}

int rule_order(QuadratureRule rule) noexcept { return rule == QuadratureRule::kSimpson ? 4 : 2; }

Mesh build_mesh(double lo, double hi, bool graded, int cells, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) throw DomainError("quadrature interval must satisfy lo < hi");
  if (cells < 1) throw DomainError("quadrature needs at least one cell");
  Mesh mesh;
  const double length = hi - lo;
  if (!graded) {
    for (int j = 0; j < cells; ++j) {
      const double a = lo + length * j / cells;
      const double b = j + 1 == cells ? hi : lo + length * (j + 1) / cells;
      append_cell(mesh, a, b, cfg.rule);
    }
    return mesh;
  }
  const double r = cfg.grading_ratio;
  const double stretch = 1.0 / r - 1.0;
  for (int k = cfg.bands - 1; k >= 0; --k) {
    // Band [lo + L r^{k+1}, lo + L r^k], offsets kept relative to lo.
    const double inner = length * std::pow(r, k + 1);
    const double outer = k == 0 ? length : length * std::pow(r, k);
    for (int j = 0; j < cells; ++j) {
      const double a = lo + inner * (1.0 + stretch * j / cells);
      const double b = j + 1 == cells ? lo + outer : lo + inner * (1.0 + stretch * (j + 1) / cells);
      append_cell(mesh, a, b, cfg.rule);
    }
  }
  if (cfg.rule == QuadratureRule::kSimpson) mesh.nodes.back() = hi;
  return mesh;
}

Integral integrate_bases(const BasePair& bases, double e1, double e2, double lo, double hi,
                         std::span<const double> breaks, const QuadratureConfig& cfg) {
  cfg.validate();
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(hi);

  const int order = rule_order(cfg.rule);
  CompensatedSum value;
  CompensatedSum fine_total;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Double the resolution until the Richardson estimate meets refine_tol.
    double coarse = integrate_piece(bases, e1, e2, lo, cuts[i], cuts[i + 1], 1, cfg);
    Refined r{};
    double fine = coarse;
    for (int scale = 2; scale <= kMaxScale; scale *= 2) {
      fine = integrate_piece(bases, e1, e2, lo, cuts[i], cuts[i + 1], scale, cfg);
      r = refine_oracle(coarse, fine, order);
      if (r.error_estimate <= cfg.refine_tol * std::abs(fine)) break;
      coarse = fine;
    }
    value += r.value;
    fine_total += fine;
    error += r.error_estimate;
  }
  const double total = value.value();
  if (!std::isfinite(total)) throw DomainError("integral is not finite");
  if (error > cfg.refine_tol * std::abs(fine_total.value())) {
    std::ostringstream os;
    os << "quadrature error estimate " << error << " (relative "
       << error / std::abs(fine_total.value()) << ") exceeds tolerance " << cfg.refine_tol;
    throw ConvergenceError(os.str());
  }
  return {total, error, false};
}

}  // namespace hardylab::quadrature

#include "diffmix/renorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

#include "diffmix/errors.hpp"
#include "diffmix/flows.hpp"
#include "diffmix/norms.hpp"

namespace diffmix {
namespace {

void require_power_of_two(std::size_t scale, const char* what) {
  if (scale == 0 || !std::has_single_bit(scale)) {
    throw std::invalid_argument(std::string(what) + ": L must be a power of two");
  }
}

}  // namespace

void require_mean_zero(const Field& g, const char* what) {
  const double mass = quadrature(g);
  if (std::abs(mass) > 1e-8 * l1_norm(g)) {
    throw DomainError(std::string(what) + ": data must have zero mean (mass " + std::to_string(mass) + ")");
  }
}

Field renormalize_onto(const Field& wide, double scale, const SpectralGrid& target) {
  return resample_scaled(wide, scale, target, kTailTolerance).field;
}

double heat_contraction(const Field& g, std::size_t scale, MeanGate gate) {
  require_power_of_two(scale, "heat_contraction");
  if (gate == MeanGate::enforce) require_mean_zero(g, "heat_contraction");
  const double l = static_cast<double>(scale);
  const SpectralGrid wide = widened(g.grid(), scale);
  const Field u = heat_propagate(embed(g, wide), l * l - 1.0);
  return h22_norm(renormalize_onto(u, l, g.grid())) / h22_norm(g);
}

Field renormalized_linear_flow(const BurgersParams& p, const Field& g, std::size_t scale, MeanGate gate) {
  require_power_of_two(scale, "burgers_coercivity");
  if (gate == MeanGate::enforce) require_mean_zero(g, "burgers_coercivity");
  const double l = static_cast<double>(scale);
  const SpectralGrid wide = widened(g.grid(), scale);
  const Field b0 = bbar(p, 1.0, wide);
  const Field a = linflow_rep(b0, embed(g, wide), l * l);
  return renormalize_onto(a, l, g.grid());
}

double burgers_coercivity(const BurgersParams& p, const Field& g, std::size_t scale, MeanGate gate) {
  return h22_norm(renormalized_linear_flow(p, g, scale, gate)) / h22_norm(g);
}

RLReport rl_properties_check(const Field& f, double scale) {
  RLReport r;
  r.scale = scale;
  const Field rf = resample_scaled(f, scale).field;
  r.h22_ratio = h22_norm(rf) / h22_norm(f);
  r.h22_bound = std::pow(scale, 2.5);
  r.bound_holds = r.h22_ratio <= r.h22_bound * (1.0 + 1e-12);
  const Field lhs = derivative(rf, 1);
  const Field rhs = resample_scaled(derivative(f, 1), scale).field * scale;
  const double peak = max_abs(rhs);
  r.commutation_residual = peak > 0.0 ? max_abs_difference(lhs, rhs) / peak : max_abs(lhs);
  return r;
}

std::vector<CorpusEntry> default_corpus(const SpectralGrid& grid) {
  auto gauss_d1 = [](double s, double c) {
    return [s, c](double x) {
      const double y = x - c;
      return -y / (2.0 * s * s) * std::exp(-y * y / (4.0 * s * s));
    };
  };
  std::vector<CorpusEntry> c;
  c.push_back({"gauss_d1", Field::sample(grid, gauss_d1(1.0, 0.0))});
  c.push_back({"gauss_d2", Field::sample(grid, [](double x) {
                 return (0.25 * x * x - 0.5) * std::exp(-0.25 * x * x);
               })});
  c.push_back({"gauss_d1_narrow", Field::sample(grid, gauss_d1(0.5, 0.0))});
  c.push_back({"gauss_d1_wide", Field::sample(grid, gauss_d1(2.0, 0.0))});
  c.push_back({"gauss_d1_shifted", Field::sample(grid, gauss_d1(1.0, 2.0))});
  c.push_back({"gauss_even", Field::sample(grid, [](double x) {
                 return std::exp(-0.25 * x * x) - 0.5 * std::exp(-x * x / 16.0);
               })});
  c.push_back({"bump_d1", Field::sample(grid, [](double x) {
                 constexpr double r = 3.0;
                 const double y = x / r;
                 if (std::abs(y) >= 1.0) return 0.0;
                 const double q = 1.0 - y * y;
                 return -2.0 * y / (r * q * q) * std::exp(-1.0 / q);
               })});
  return c;
}

Field unit_mass_probe(const SpectralGrid& grid) {
  return Field::sample(grid, [](double x) { return std::exp(-0.25 * x * x) / std::sqrt(4.0 * std::acos(-1.0)); });
}

ContractionTable coercivity_sweep(std::span<const double> phi_ds, std::span<const std::size_t> scales,
                                  std::span<const CorpusEntry> corpus, MeanGate gate, unsigned threads) {
  ContractionTable table;
  table.scales.assign(scales.begin(), scales.end());
  for (double phi : phi_ds) {
    for (const auto& e : corpus) {
      for (std::size_t l : scales) table.rows.push_back({phi, l, e.id, 0.0, 0.0});
    }
  }

  std::vector<const Field*> inputs;
  for (std::size_t i = 0; i < phi_ds.size(); ++i) {
    for (const auto& e : corpus) {
      for (std::size_t j = 0; j < scales.size(); ++j) inputs.push_back(&e.g);
    }
  }

  const unsigned workers = std::max(1U, threads == 0 ? std::thread::hardware_concurrency() : threads);
  auto run = [&](std::size_t begin) {
    for (std::size_t k = begin; k < table.rows.size(); k += workers) {
      ContractionRow& row = table.rows[k];
      const BurgersParams p = BurgersParams::from_phase_offset(row.phi_d);
      row.ratio = burgers_coercivity(p, *inputs[k], row.scale, gate);
      row.kappa = static_cast<double>(row.scale) * row.ratio;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, run, w));
    for (auto& j : jobs) j.get();
  }

  std::size_t k = 0;
  for (double phi : phi_ds) {
    KappaSpread spread{phi, std::vector<double>(scales.size(), 0.0), 0.0};
    for (const auto& e : corpus) {
      std::vector<double> ls, rs;
      for (std::size_t j = 0; j < scales.size(); ++j, ++k) {
        ls.push_back(static_cast<double>(scales[j]));
        rs.push_back(table.rows[k].ratio);
        spread.sup_kappa[j] = std::max(spread.sup_kappa[j], table.rows[k].kappa);
      }
      if (ls.size() >= 2) table.slopes.push_back({phi, e.id, fit_loglog(ls, rs)});
    }
    const auto [lo, hi] = std::minmax_element(spread.sup_kappa.begin(), spread.sup_kappa.end());
    spread.spread = (lo != spread.sup_kappa.end() && *lo > 0.0) ? *hi / *lo : 0.0;
    table.spreads.push_back(std::move(spread));
  }
  return table;
}

}  // namespace diffmix

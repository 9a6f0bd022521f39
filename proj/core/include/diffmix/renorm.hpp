#pragma once

// Renormalization map R_L f(z) = L f(L z) and measured contraction constants
// of the heat flow and of the linearized Burgers flow Phi_b over [1, L^2].

#include <string>
#include <vector>

#include "diffmix/fit.hpp"
#include "diffmix/grid.hpp"
#include "diffmix/profiles.hpp"

namespace diffmix {

enum class MeanGate { enforce, skip };

/// Throws DomainError unless |int g| <= 1e-8 ||g||_{L^1}.
void require_mean_zero(const Field& g, const char* what);

/// R_L applied to a field that lives on widened(target, L): exact subsampling
/// onto the nodes of `target`.
Field renormalize_onto(const Field& wide, double scale, const SpectralGrid& target);

/// ||R_L e^{(L^2-1) Lap} g||_{H^2(2)} / ||g||_{H^2(2)}. L must be a power of two.
double heat_contraction(const Field& g, std::size_t scale, MeanGate gate = MeanGate::enforce);

/// R_L Phi_b(L^2-1) g on the grid of g, with b(1) = bbar(p, 1).
Field renormalized_linear_flow(const BurgersParams& p, const Field& g, std::size_t scale,
                               MeanGate gate = MeanGate::enforce);

/// ||R_L Phi_b(L^2-1) g||_{H^2(2)} / ||g||_{H^2(2)} with b(1) = bbar(p, 1).
double burgers_coercivity(const BurgersParams& p, const Field& g, std::size_t scale,
                          MeanGate gate = MeanGate::enforce);

struct RLReport {
  double scale = 1.0;
  double h22_ratio = 0.0;  // ||R_L f|| / ||f|| in H^2(2)
  double h22_bound = 0.0;  // L^{5/2}
  bool bound_holds = false;
  /// max |d_x R_L f - L R_L d_x f| relative to max |L R_L d_x f|.
  double commutation_residual = 0.0;
};

RLReport rl_properties_check(const Field& f, double scale);

struct CorpusEntry {
  std::string id;
  Field g;
};

/// Frozen mean-zero test functions: Gaussian derivatives (plain, dilated,
/// translated), an even mean-zero Gaussian difference and the derivative of a
/// compactly supported bump.
std::vector<CorpusEntry> default_corpus(const SpectralGrid& grid);

/// Unit-mass Gaussian used to show that contraction needs zero mean.
Field unit_mass_probe(const SpectralGrid& grid);

struct ContractionRow {
  double phi_d = 0.0;
  std::size_t scale = 1;
  std::string g_id;
  double ratio = 0.0;
  double kappa = 0.0;  // L * ratio
};

struct SlopeFit {
  double phi_d = 0.0;
  std::string g_id;
  LineFit fit;  // log ratio against log L
};

struct KappaSpread {
  double phi_d = 0.0;
  /// Corpus-sup of kappa at each L, in the order of the requested scales.
  std::vector<double> sup_kappa;
  /// max / min of sup_kappa over L.
  double spread = 0.0;
};

struct ContractionTable {
  std::vector<std::size_t> scales;
  std::vector<ContractionRow> rows;
  std::vector<SlopeFit> slopes;
  std::vector<KappaSpread> spreads;
};

/// Burgers coercivity over every (phi_d, g, L). Tasks run concurrently on up
/// to `threads` workers (0 = hardware concurrency); results are ordered.
ContractionTable coercivity_sweep(std::span<const double> phi_ds, std::span<const std::size_t> scales,
                                  std::span<const CorpusEntry> corpus, MeanGate gate = MeanGate::enforce,
                                  unsigned threads = 0);

}  // namespace diffmix

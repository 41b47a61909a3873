#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlc/littlewood_paley.hpp"
#include "nlc/spectral_field.hpp"

/// Empirical constants of the inequalities used in the regularity argument,
/// measured as corpus maxima of lhs / rhs. There is no pass threshold: the
/// constants are unknown, so stability across resolutions is what is checked.
namespace nlc::audit {

/// Seeded corpus of real scalar fields with coefficients only on |k_i| <= band.
/// The coefficients do not depend on the grid, so the same corpus can be laid
/// on any grid with n > 4 band (products stay alias free).
struct CorpusSpec {
  int size = 100;
  std::uint64_t seed = 1;
  int band = 5;
  bool zero_only = false;  // every member is the zero field
};

/// Members cycle through: random coefficients with |k|^-2 decay, a Gaussian
/// bump at a random centre (analytic coefficients, truncated), and a single
/// cosine mode with random wavevector and phase.
std::vector<SpectralField> make_corpus(const Grid& grid, const CorpusSpec& spec);

/// ||op f||_{L^p} <= C ||Lambda^b f||_{L^2}^{1-theta} ||Lambda^c f||_{L^2}^theta
/// where op is grad (modulus of the gradient) or Lambda^a.
struct GnInequality {
  std::string id;
  int dim = 2;
  bool gradient = false;  // lhs uses |grad f| instead of Lambda^a f
  double a = 1.0;
  double p = 2.0;
  double b = 0.0;
  double c = 1.0;
  double theta = 0.5;
};

/// The lists used in the 2D and 3D estimates.
std::vector<GnInequality> gn_inequalities(int dim);

/// (a - n/p) - [(1-theta)(b - n/2) + theta (c - n/2)]; zero when the
/// inequality is consistent with scaling on R^n.
double scaling_gap(const GnInequality& ineq);

/// lhs / rhs for one field; NaN when the right-hand side vanishes.
double gn_ratio(const GnInequality& ineq, const SpectralField& f);

struct Row {
  std::string id;
  double max_ratio = 0.0;
  int evaluated = 0;
  int skipped = 0;
  double scaling_gap = 0.0;
};

std::vector<Row> audit_gn_inequalities(const std::vector<SpectralField>& corpus, int dim);

/// 1/p = 1/p1 + 1/q1 = 1/p2 + 1/q2 with every exponent in (1, inf).
struct HolderExponents {
  double p = 2.0;
  double p1 = 4.0;
  double q1 = 4.0;
  double p2 = 4.0;
  double q2 = 4.0;
};

/// Throws ConfigError if the relation or the range fails.
void check_holder(const HolderExponents& e);

struct CommutatorProduct {
  double commutator_lhs = 0.0;  // ||Lambda^a (fg) - f Lambda^a g||_p
  double commutator_rhs = 0.0;  // ||grad f||_p1 ||Lambda^{a-1} g||_q1 + ||Lambda^a f||_p2 ||g||_q2
  double product_lhs = 0.0;     // ||Lambda^a (fg)||_p
  double product_rhs = 0.0;     // ||f||_p1 ||Lambda^a g||_q1 + ||Lambda^a f||_p2 ||g||_q2
};

/// Products are formed pointwise on the grid. Lambda^s maps the mean to zero,
/// so a constant g has Lambda^s g = 0.
CommutatorProduct commutator_product(const SpectralField& f, const SpectralField& g, double alpha,
                                     const HolderExponents& e);

/// Pairs (corpus[i], corpus[i+1]); rows "commutator" and "product".
std::vector<Row> audit_commutator_product(const std::vector<SpectralField>& corpus, double alpha,
                                          const HolderExponents& e);

struct InterpolationCase {
  double alpha = 1.0;
  double p = 4.0;
  double q = 2.0;
};

/// One row per case plus the Sobolev form for p > 2 ("interp" rows), the
/// B^{-1}_{inf,inf} <= C L^n embedding and the two sides of the H^s ~ B^s_{2,2}
/// equivalence.
std::vector<Row> audit_interpolation(const lp::DyadicCutoffBank& bank, const std::vector<SpectralField>& corpus,
                                     const std::vector<InterpolationCase>& cases);

struct ReportRow {
  std::string id;
  double coarse = 0.0;  // corpus max ratio on the coarse grid
  double fine = 0.0;
  double delta = 0.0;   // |fine - coarse| / coarse
  int evaluated = 0;
  double scaling_gap = 0.0;
};

struct AuditConfig {
  int dim = 2;
  int n_coarse = 32;
  int n_fine = 64;
  CorpusSpec corpus;
  std::vector<InterpolationCase> cases{{1.0, 4.0, 2.0}, {1.0, 3.0, 2.0}};
  double alpha = 2.0;
  std::vector<HolderExponents> holder{{2.0, 4.0, 4.0, 4.0, 4.0}, {1.5, 3.0, 3.0, 3.0, 3.0}};
};

/// Full table on both grids; rows with no evaluated member are dropped.
std::vector<ReportRow> run_audit(const AuditConfig& config);

}  // namespace nlc::audit

#pragma once

#include "hlmono/angle.hpp"
#include "hlmono/cutoff.hpp"
#include "hlmono/mesh.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hlmono {

/// Smallest gauge (rho on euclidean meshes) over boundary nodes: the largest r
/// for which {gauge < r} is fully meshed.
double meshed_radius(const SurfaceMesh& mesh);

struct DensityReport {
    std::vector<double> radii;
    std::vector<double> density;  ///< r^-2 Area{gauge < r}
    std::vector<double> area;
    std::vector<char> reliable;   ///< 0 where {gauge < r} reaches the boundary
    std::map<int, double> theta0_weights;
    std::optional<double> dirichlet_sigma;
    std::optional<double> c_upper;  ///< sup over radii of the measured constants
    std::optional<double> c_lower;
    std::map<std::string, bool> verdicts;
};

/// Densities by clipped quadrature of the piecewise linear gauge. Radii must
/// be positive and strictly increasing.
DensityReport density_curve(const SurfaceMesh& mesh, const std::vector<double>& radii);

struct Theta0Options {
    /// First level. 0 picks min(32 g1, R / 2) with g1 the smallest neighbor
    /// gauge and R the meshed radius, and drops levels below 2 g1.
    double t0 = 0.0;
    int levels = 5;
};

struct Theta0Result {
    double value = 0.0;  ///< polynomial extrapolation of the contour values to t = 0
    std::vector<double> levels;
    std::vector<double> contour;
};

/// Integral of (d gauge / d nu) / gauge over the polygonal level curve
/// {gauge = t} of the piecewise linear gauge near p, with nu the outward
/// conormal, for t = t0 2^-k. Magnitudes only: cone tips give 2 pi sqrt(pq).
/// Throws MeshError if p is not an origin preimage or a level curve reaches
/// the boundary.
Theta0Result theta0(const SurfaceMesh& mesh, int p, const Theta0Options& options = {});

/// theta0 at every origin preimage.
std::map<int, double> theta0_weights(const SurfaceMesh& mesh);

struct DirichletSigma {
    double sigma_term = 0.0;   ///< int |grad sigma / (1 + sigma^2)|^2 over {gauge < R}
    double normal_term = 0.0;  ///< 4 int |(grad gauge)^perp|^2 / gauge^2 over the same set
    double discrepancy = 0.0;  ///< |sigma_term - normal_term|
    double excision_change = 0.0;  ///< change of sigma_term when one more ring is excised
    int excision_rings = 1;
};

/// Both sides of the Dirichlet equality, with elements touching the first
/// `excision_rings` rings around origin preimages left out. sigma_term uses the
/// piecewise linear interpolant of nodal sigma.
DirichletSigma dirichlet_sigma(const SurfaceMesh& mesh, double R, int excision_rings = 1);

struct LemmaBound {
    double theta0_total = 0.0;
    double dirichlet = 0.0;
    double lhs = 0.0;       ///< theta0_total + dirichlet over {gauge < 1}
    double rhs_area = 0.0;  ///< Area{1 < gauge < 2}
    double ratio = 0.0;
};

/// Throws MeshError unless {gauge < 2} is meshed.
LemmaBound lemma_density_bound(const SurfaceMesh& mesh);

/// Terms of the cutoff-weighted balance law with chi(gauge / r). The left side
/// is the sum of the five `*_term` members.
struct BalanceTerms {
    double gradient_energy_term = 0.0;  ///<  int |grad sigma|^2 / (1 + sigma^2)^2 gauge chi' / 4
    double second_derivative_term = 0.0; ///< int arctan(sigma) chi'' gauge grad gauge . grad sigma / (1 + sigma^2) / 4
    double first_derivative_term = 0.0; ///< -3/4 int arctan(sigma) chi' grad gauge . grad sigma / (1 + sigma^2)
    double phase_term = 0.0;            ///< -int arctan(sigma) chi' / gauge sigma / sqrt(1 + sigma^2)
    double radial_term = 0.0;           ///< -int chi' |grad gauge|^2 / gauge
    double normal_energy = 0.0;         ///< 4 int chi |(grad gauge)^perp|^2 / gauge^2
    double theta0 = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  ///< |lhs - rhs| / (|lhs| + |rhs| + 1)
    /// -int arctan(sigma) chi' grad beta_H . grad gauge, which the first four
    /// terms rewrite; present when an angle form is given.
    std::optional<double> angle_term;
    std::optional<double> angle_gap;  ///< relative mismatch of that rewrite
};

/// theta0_total defaults to the sum of theta0_weights. Derivatives of the
/// cutoff carry the chain-rule factors 1/r and 1/r^2.
BalanceTerms k10_balance(const SurfaceMesh& mesh, const AngleForm* form, double r, const CutoffSpec& cutoff,
                         std::optional<double> theta0_total = std::nullopt);

struct MainTheoremRow {
    double r = 0.0;
    double density = 0.0;
    double inner_energy = 0.0;  ///< dirichlet sigma_term over {gauge < r/2}
    double c_upper = 0.0;       ///< density / Area{1/2 < gauge < 2}
    double c_lower = 0.0;       ///< (theta0 + inner_energy) / density
};

struct MainTheoremCheck {
    std::vector<MainTheoremRow> rows;
    double theta0_total = 0.0;
    double outer_area = 0.0;
    double sweep_bound = 0.0;  ///< sup of c_upper max(1, c_lower)
    double upper_spread = 0.0; ///< max / min of c_upper over the sweep
    double lower_spread = 0.0;
    bool bounded = false;      ///< every constant finite and positive
};

/// Throws MeshError unless {gauge < 2} is meshed, std::invalid_argument unless
/// radii lie in (0, 1).
MainTheoremCheck main_theorem_check(const SurfaceMesh& mesh, const std::vector<double>& radii);

struct ClassicalRow {
    double r = 0.0;
    double lhs = 0.0;  ///< r^-2 Area{rho < r}
    double rhs = 0.0;  ///< int_{rho < r} |P_N grad rho|^2 / rho^2 + pi Card
    bool reliable = true;  ///< false once {rho < r} reaches the boundary
};

struct ClassicalCheck {
    std::vector<ClassicalRow> rows;
    int origin_count = 0;
    double minimality_residual = 0.0;
    double max_residual = 0.0;  ///< max |lhs - rhs| / lhs over reliable rows with lhs > 0
    bool monotone = false;      ///< over reliable rows
};

/// Throws MeshError on heisenberg meshes, and when the rho^2 weighted RMS of
/// the coordinate Laplacian exceeds `minimality_tolerance`.
ClassicalCheck classical_monotonicity(const SurfaceMesh& mesh, const std::vector<double>& radii,
                                      double minimality_tolerance = 0.05);

struct BernsteinRow {
    double r = 0.0;
    double annulus_mean = 0.0;  ///< F(r) = r^-1 int_{r < gauge < 2r} 1 / gauge
    double rho_gap = 0.0;       ///< S(r) = sup |rho / gauge - 1| over annulus nodes
    double annulus_energy = 0.0;  ///< D(r) = int_{r < gauge < 2r} |grad sigma / (1 + sigma^2)|^2
    // Left side of the epsilon-cutoff balance.
    double second_derivative_term = 0.0;
    double first_derivative_term = 0.0;
    double angle_bound_term = 0.0;  ///< -int chi' / (r gauge) (sigma arctan sigma + 1) / sqrt(1 + sigma^2)
    // Right side.
    double energy_term = 0.0;        ///< int chi |grad sigma|^2 / (1 + sigma^2)^2
    double cutoff_energy_term = 0.0; ///< -2 int chi' gauge / (4r) |grad sigma|^2 / (1 + sigma^2)^2
    double residual = 0.0;
};

struct BernsteinOptions {
    double epsilon = 0.1;
    double mean_tolerance = 1e-2;  ///< relative distance of F to 2 pi
    double gap_tolerance = 1e-2;
    double conclusion_tolerance = 1e-8;
};

struct BernsteinCheck {
    std::vector<BernsteinRow> rows;
    double theta0_total = 0.0;
    bool plane_like = false;  ///< F -> 2 pi and S -> 0 at the largest radius
    std::optional<double> conclusion_energy;  ///< dirichlet over the meshed range, when plane-like and theta0 >= 2 pi
    std::optional<bool> conclusion_pass;
};

/// Throws MeshError unless {gauge < 2 r_max} is meshed.
BernsteinCheck bernstein_check(const SurfaceMesh& mesh, const std::vector<double>& radii,
                               const BernsteinOptions& options = {});

/// (sigma arctan sigma + 1) / sqrt(1 + sigma^2) and its derivative
/// arctan sigma / (1 + sigma^2)^(3/2).
double angle_bound_profile(double sigma);
double angle_bound_derivative(double sigma);

struct ScalarCheck {
    std::size_t points = 0;
    double worst = 0.0;  ///< largest violation, normalized by its tolerance; pass iff <= 1
    bool pass = false;
};

/// 1 <= profile <= pi/2 on sigma = sinh(u), u uniform on [-asinh(bound), asinh(bound)],
/// plus the limits at 0 and infinity.
ScalarCheck check_angle_bound_range(std::size_t points = 1000000, double bound = 1e6);
/// Central differences of the profile against its closed-form derivative on the same grid.
ScalarCheck check_angle_bound_derivative(std::size_t points = 1000000, double bound = 1e6);

}  // namespace hlmono
